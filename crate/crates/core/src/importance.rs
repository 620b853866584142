//! Barlow-Proschan importance.
//!
//! The index of component `k` is the probability that the failure of `k` is
//! the one that fails the system. It is computed here by integrating the
//! diagonal section of the k-th partial derivative of the reliability
//! function over \[0,1\], with the explicit Shapley-value subset sum kept as
//! an independent oracle.

use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::multilinear::MultiPoly;
use crate::rational::{binomial_rational, decimal_vec, format_vec, Rational};
use crate::structure::{Component, Structure, Subset};

/// Per-component Barlow-Proschan index. For a semicoherent structure every
/// entry lies in \[0,1\] and the entries sum to 1; irrelevant components get
/// exactly 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BpIndex {
    values: Vec<Rational>,
}

impl Serialize for BpIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.formatted())
    }
}

impl BpIndex {
    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn formatted(&self) -> Vec<String> {
        format_vec(&self.values)
    }

    pub fn decimals(&self) -> Vec<String> {
        decimal_vec(&self.values)
    }
}

/// Owen's integral method: entry `k` is the integral over \[0,1\] of the
/// diagonal section of `d h / d x_k`. Exact; no quadrature.
pub fn bp_owen(h: &MultiPoly) -> BpIndex {
    let n = h.n();
    let values = (1..=n as u32)
        .map(|k| {
            let component = Component::new(k, n).expect("k in range");
            h.partial_derivative(component).diagonal().integrate_01()
        })
        .collect();
    BpIndex { values }
}

/// The Shapley-value subset sum, evaluated from the truth table:
/// `I_k = sum_{A not containing k} (phi(A + {k}) - phi(A)) / (n * C(n-1, |A|))`.
pub fn bp_shapley_oracle(s: &Structure) -> Result<BpIndex> {
    s.require_semicoherent()?;
    let n = s.n();
    let table = s.truth_table()?;
    let entries = table.entries();
    let n_rational = crate::rational::int(n as i64);

    let mut values = Vec::with_capacity(n);
    for k in 1..=n as u32 {
        let bit = Component::new(k, n)?.bit() as usize;
        let mut acc = Rational::from_integer(0.into());
        for (mask, &working) in entries.iter().enumerate() {
            if mask & bit != 0 || working {
                continue;
            }
            // Monotone structure: the difference is 1 exactly when the
            // subset fails but gains k and works.
            if entries[mask | bit] {
                let size = Subset::from_bits(mask as u64).len();
                acc += Rational::from_integer(1.into())
                    / (&n_rational * binomial_rational(n - 1, size));
            }
        }
        values.push(acc);
    }
    Ok(BpIndex { values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn bridge() -> Structure {
        Structure::parse("x1&x4 | x2&x5 | x1&x3&x5 | x2&x3&x4", 5).unwrap()
    }

    #[test]
    fn bridge_owen_index() {
        let h = MultiPoly::reliability(&bridge()).unwrap();
        let bp = bp_owen(&h);
        assert_eq!(
            bp.values(),
            &[
                ratio(7, 30),
                ratio(7, 30),
                ratio(1, 15),
                ratio(7, 30),
                ratio(7, 30)
            ]
        );
    }

    #[test]
    fn series_symmetry() {
        let s = Structure::parse("x1&x2&x3", 3).unwrap();
        let bp = bp_owen(&MultiPoly::reliability(&s).unwrap());
        assert_eq!(bp.values(), &[ratio(1, 3), ratio(1, 3), ratio(1, 3)]);
    }

    #[test]
    fn shapley_oracle_values() {
        assert_eq!(
            bp_shapley_oracle(&bridge()).unwrap().values(),
            &[
                ratio(7, 30),
                ratio(7, 30),
                ratio(1, 15),
                ratio(7, 30),
                ratio(7, 30)
            ]
        );

        let parallel = Structure::parse("x1|x2", 2).unwrap();
        assert_eq!(
            bp_shapley_oracle(&parallel).unwrap().values(),
            &[ratio(1, 2), ratio(1, 2)]
        );

        let two_of_three = Structure::parse("kof(2;x1,x2,x3)", 3).unwrap();
        assert_eq!(
            bp_shapley_oracle(&two_of_three).unwrap().values(),
            &[ratio(1, 3), ratio(1, 3), ratio(1, 3)]
        );
    }

    #[test]
    fn owen_matches_shapley_on_degree_deficient_system() {
        let s = Structure::parse("x1&x2 | x2&x3 | x3&x4", 4).unwrap();
        let owen = bp_owen(&MultiPoly::reliability(&s).unwrap());
        let shapley = bp_shapley_oracle(&s).unwrap();
        assert_eq!(owen, shapley);
        let total: Rational = owen.values().iter().sum();
        assert_eq!(total, int(1));
    }

    #[test]
    fn irrelevant_component_scores_zero() {
        let s = Structure::parse("x1&x2", 3).unwrap();
        let owen = bp_owen(&MultiPoly::reliability(&s).unwrap());
        assert_eq!(owen.values()[2], int(0));
        assert_eq!(bp_shapley_oracle(&s).unwrap(), owen);
    }
}
