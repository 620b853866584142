//! Sparse multilinear polynomials on the unit hypercube.
//!
//! The reliability function of a structure is the unique polynomial of
//! degree at most one in each variable that agrees with the structure on
//! every vertex. This module builds it from any representation, converts
//! between coefficient and value form (Moebius / zeta transforms), and
//! provides the partial derivatives and diagonal sections the importance
//! and signature pipelines consume.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::structure::{Component, Repr, Structure, Subset, ENUMERATION_CAP};
use crate::unipoly::UniPoly;

/// Abort threshold for the number of live terms during expansion.
pub const TERM_GUARD: usize = 1 << 24;

/// Multilinear polynomial `sum_A c(A) * prod_{i in A} x_i` with exact
/// rational coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Subset, Rational>,
}

impl MultiPoly {
    pub fn zero(n: usize) -> Self {
        MultiPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational, n: usize) -> Self {
        let mut p = Self::zero(n);
        if !c.is_zero() {
            p.terms.insert(Subset::EMPTY, c);
        }
        p
    }

    /// The single variable `x_i`.
    pub fn var(c: Component, n: usize) -> Result<Self> {
        Component::new(c.get(), n)?;
        let mut p = Self::zero(n);
        p.terms
            .insert(Subset::from_components([c]), Rational::one());
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Subset, &Rational)> {
        self.terms.iter().map(|(s, c)| (*s, c))
    }

    pub fn coefficient(&self, s: Subset) -> Rational {
        self.terms.get(&s).cloned().unwrap_or_else(Rational::zero)
    }

    fn insert(&mut self, s: Subset, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(s) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Coefficient form from values on all `2^n` subsets (Moebius inversion):
    /// `c(A) = sum_{B subseteq A} (-1)^(|A|-|B|) phi(B)`.
    pub fn from_values(values: &BTreeMap<Subset, Rational>, n: usize) -> Result<Self> {
        Self::check_enumeration(n)?;
        let size = 1usize << n;
        let mut dense = Vec::with_capacity(size);
        for mask in 0..size {
            let s = Subset::from_bits(mask as u64);
            match values.get(&s) {
                Some(v) => dense.push(v.clone()),
                None => {
                    return Err(Error::MissingSubset {
                        subset: s.indices(),
                    })
                }
            }
        }
        Self::from_value_slice(&dense, n)
    }

    /// Same as [`from_values`](Self::from_values) with dense input indexed
    /// by subset mask.
    pub fn from_value_slice(values: &[Rational], n: usize) -> Result<Self> {
        Self::check_enumeration(n)?;
        let size = 1usize << n;
        if values.len() != size {
            return Err(Error::LengthMismatch {
                expected: size,
                got: values.len(),
            });
        }
        // In-place subset Moebius transform, one coordinate at a time.
        let mut buf = values.to_vec();
        for b in 0..n {
            let bit = 1usize << b;
            for mask in 0..size {
                if mask & bit != 0 {
                    let low = buf[mask ^ bit].clone();
                    buf[mask] -= low;
                }
            }
        }
        let mut p = Self::zero(n);
        for (mask, c) in buf.into_iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(Subset::from_bits(mask as u64), c);
            }
        }
        Ok(p)
    }

    fn check_enumeration(n: usize) -> Result<()> {
        if n > ENUMERATION_CAP {
            return Err(Error::EnumerationCap {
                n,
                cap: ENUMERATION_CAP,
            });
        }
        Ok(())
    }

    /// Values on all subsets (zeta transform): `phi(A) = sum_{B subseteq A} c(B)`,
    /// dense, indexed by subset mask. Inverse of [`from_value_slice`](Self::from_value_slice).
    pub fn values_dense(&self) -> Result<Vec<Rational>> {
        Self::check_enumeration(self.n)?;
        let size = 1usize << self.n;
        let mut buf = vec![Rational::zero(); size];
        for (s, c) in &self.terms {
            buf[s.bits() as usize] = c.clone();
        }
        for b in 0..self.n {
            let bit = 1usize << b;
            for mask in 0..size {
                if mask & bit != 0 {
                    let low = buf[mask ^ bit].clone();
                    buf[mask] += low;
                }
            }
        }
        Ok(buf)
    }

    /// Values as a subset-keyed map.
    pub fn to_values(&self) -> Result<BTreeMap<Subset, Rational>> {
        let dense = self.values_dense()?;
        Ok(dense
            .into_iter()
            .enumerate()
            .map(|(mask, v)| (Subset::from_bits(mask as u64), v))
            .collect())
    }

    fn guard(&self) -> Result<()> {
        if self.terms.len() > TERM_GUARD {
            return Err(Error::TermExplosion { limit: TERM_GUARD });
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, other.n, "mixed component counts");
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.insert(*s, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, other.n, "mixed component counts");
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.insert(*s, -c.clone());
        }
        out
    }

    /// Product with the idempotent reduction `x_i^2 = x_i`: term masks
    /// combine by union, so the result stays multilinear.
    pub fn product(&self, other: &MultiPoly) -> Result<MultiPoly> {
        assert_eq!(self.n, other.n, "mixed component counts");
        let mut out = Self::zero(self.n);
        for (sa, ca) in &self.terms {
            for (sb, cb) in &other.terms {
                out.insert(sa.union(*sb), ca * cb);
            }
            out.guard()?;
        }
        Ok(out)
    }

    /// `a + b - a*b`, the algebraic OR of reliability functions.
    pub fn coproduct(&self, other: &MultiPoly) -> Result<MultiPoly> {
        let prod = self.product(other)?;
        Ok(self.add(other).sub(&prod))
    }

    /// The reliability function of a structure. Formula and path-set
    /// representations are expanded symbolically with idempotent reduction
    /// and incremental zero-pruning; truth tables go through Moebius
    /// inversion.
    pub fn reliability(s: &Structure) -> Result<MultiPoly> {
        let n = s.n();
        match s.repr() {
            Repr::Table(t) => {
                let values: Vec<Rational> = t
                    .entries()
                    .iter()
                    .map(|&b| if b { Rational::one() } else { Rational::zero() })
                    .collect();
                Self::from_value_slice(&values, n)
            }
            Repr::PathSets(sets) => {
                let mut acc = Self::zero(n);
                for set in sets {
                    let mut term = Self::zero(n);
                    term.terms.insert(*set, Rational::one());
                    acc = acc.coproduct(&term)?;
                }
                Ok(acc)
            }
            Repr::Formula(f) => Self::from_formula(f, n),
        }
    }

    fn from_formula(f: &crate::structure::Formula, n: usize) -> Result<MultiPoly> {
        use crate::structure::Formula;
        match f {
            Formula::Var(c) => Self::var(*c, n),
            Formula::And(children) => {
                let mut acc = Self::constant(Rational::one(), n);
                for child in children {
                    acc = acc.product(&Self::from_formula(child, n)?)?;
                }
                Ok(acc)
            }
            Formula::Or(children) => {
                let mut acc = Self::zero(n);
                for child in children {
                    acc = acc.coproduct(&Self::from_formula(child, n)?)?;
                }
                Ok(acc)
            }
            Formula::KOf { k, children } => {
                // Count polynomial: exactly[j] is the indicator of exactly j
                // children working, built one child at a time.
                let one = Self::constant(Rational::one(), n);
                let mut exactly = vec![one.clone()];
                for child in children {
                    let p = Self::from_formula(child, n)?;
                    let q = one.sub(&p);
                    let mut next = Vec::with_capacity(exactly.len() + 1);
                    for j in 0..=exactly.len() {
                        let mut term = Self::zero(n);
                        if j < exactly.len() {
                            term = term.add(&exactly[j].product(&q)?);
                        }
                        if j > 0 {
                            term = term.add(&exactly[j - 1].product(&p)?);
                        }
                        term.guard()?;
                        next.push(term);
                    }
                    exactly = next;
                }
                let mut acc = Self::zero(n);
                for counted in exactly.iter().skip(*k) {
                    acc = acc.add(counted);
                }
                Ok(acc)
            }
        }
    }

    /// Formal partial derivative with respect to `x_k`. Terms containing
    /// `k` drop it from the mask; the rest vanish.
    pub fn partial_derivative(&self, k: Component) -> MultiPoly {
        let mut out = Self::zero(self.n);
        for (s, c) in &self.terms {
            if s.contains(k) {
                out.insert(s.without(k), c.clone());
            }
        }
        out
    }

    /// Diagonal section: the univariate polynomial obtained by identifying
    /// all variables, with `coeff of x^d = sum_{|A| = d} c(A)`.
    pub fn diagonal(&self) -> UniPoly {
        let mut coeffs = vec![Rational::zero(); self.n + 1];
        for (s, c) in &self.terms {
            coeffs[s.len()] += c;
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// Exact evaluation at a point of length `n`.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (s, c) in &self.terms {
            let mut term = c.clone();
            for comp in s.components() {
                term *= &point[comp.get() as usize - 1];
            }
            acc += term;
        }
        Ok(acc)
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            subset: Vec<u32>,
            coef: String,
        }
        #[derive(Serialize)]
        struct Poly {
            n: usize,
            terms: Vec<Term>,
        }
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(sub, c)| Term {
                    subset: sub.indices(),
                    coef: format_rational(c),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Term {
            subset: Vec<u32>,
            coef: String,
        }
        #[derive(Deserialize)]
        struct Poly {
            n: usize,
            terms: Vec<Term>,
        }
        let raw = Poly::deserialize(d)?;
        let mut poly = MultiPoly::zero(raw.n);
        for term in raw.terms {
            let subset = Subset::from_indices(&term.subset, raw.n).map_err(D::Error::custom)?;
            let coef = parse_rational(&term.coef).map_err(D::Error::custom)?;
            poly.insert(subset, coef);
        }
        Ok(poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use crate::structure::Structure;

    fn subset(indices: &[u32], n: usize) -> Subset {
        Subset::from_indices(indices, n).unwrap()
    }

    fn bridge() -> Structure {
        Structure::parse("x1&x4 | x2&x5 | x1&x3&x5 | x2&x3&x4", 5).unwrap()
    }

    /// The ten-term reliability function of the bridge, written out.
    fn bridge_poly() -> MultiPoly {
        let mut p = MultiPoly::zero(5);
        for (mask, c) in [
            (vec![1u32, 4], 1i64),
            (vec![2, 5], 1),
            (vec![1, 3, 5], 1),
            (vec![2, 3, 4], 1),
            (vec![1, 2, 3, 4], -1),
            (vec![1, 2, 3, 5], -1),
            (vec![1, 2, 4, 5], -1),
            (vec![1, 3, 4, 5], -1),
            (vec![2, 3, 4, 5], -1),
            (vec![1, 2, 3, 4, 5], 2),
        ] {
            p.insert(subset(&mask, 5), int(c));
        }
        p
    }

    #[test]
    fn mobius_of_parallel_pair() {
        let s = Structure::parse("x1|x2", 2).unwrap();
        let table = s.truth_table().unwrap();
        let values: Vec<Rational> = table
            .entries()
            .iter()
            .map(|&b| if b { int(1) } else { int(0) })
            .collect();
        let p = MultiPoly::from_value_slice(&values, 2).unwrap();
        assert_eq!(p.coefficient(subset(&[1], 2)), int(1));
        assert_eq!(p.coefficient(subset(&[2], 2)), int(1));
        assert_eq!(p.coefficient(subset(&[1, 2], 2)), int(-1));
        assert_eq!(p.term_count(), 3);
    }

    #[test]
    fn mobius_of_constant() {
        let c = ratio(3, 7);
        let values = vec![c.clone(); 8];
        let p = MultiPoly::from_value_slice(&values, 3).unwrap();
        assert_eq!(p.coefficient(Subset::EMPTY), c);
        assert_eq!(p.term_count(), 1);
    }

    #[test]
    fn mobius_of_bridge_table() {
        let table = bridge().to_table().unwrap();
        let p = MultiPoly::reliability(&table).unwrap();
        assert_eq!(p, bridge_poly());
    }

    #[test]
    fn mobius_map_input_checks_completeness() {
        let mut values = BTreeMap::new();
        values.insert(Subset::EMPTY, int(0));
        match MultiPoly::from_values(&values, 1) {
            Err(Error::MissingSubset { subset }) => assert_eq!(subset, vec![1]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zeta_inverts_mobius() {
        // x1 + x2 - x1 x2 takes the value 1 on {1,2}.
        let parallel = MultiPoly::reliability(&Structure::parse("x1|x2", 2).unwrap()).unwrap();
        let parallel_values = parallel.values_dense().unwrap();
        assert_eq!(parallel_values[subset(&[1, 2], 2).bits() as usize], int(1));

        let p = bridge_poly();
        let values = p.values_dense().unwrap();
        assert_eq!(values[subset(&[1, 2], 5).bits() as usize], int(0));
        assert_eq!(values[subset(&[1, 4], 5).bits() as usize], int(1));
        let back = MultiPoly::from_value_slice(&values, 5).unwrap();
        assert_eq!(back, p);

        let empty = MultiPoly::zero(3);
        assert!(empty
            .values_dense()
            .unwrap()
            .iter()
            .all(num_traits::Zero::is_zero));
    }

    #[test]
    fn reliability_of_bridge_by_expansion() {
        let p = MultiPoly::reliability(&bridge()).unwrap();
        assert_eq!(p, bridge_poly());
    }

    #[test]
    fn reliability_of_series_is_single_term() {
        let s = Structure::parse("x1&x2&x3&x4", 4).unwrap();
        let p = MultiPoly::reliability(&s).unwrap();
        assert_eq!(p.term_count(), 1);
        assert_eq!(p.coefficient(Subset::full(4)), int(1));
    }

    #[test]
    fn repeated_variables_reduce_idempotently() {
        // Shared x2 between the first two terms.
        let s = Structure::parse("x1&x2 | x2&x3&x4 | x5&x6&x7&x8", 8).unwrap();
        let h = MultiPoly::reliability(&s).unwrap();
        assert_eq!(
            h.diagonal(),
            UniPoly::from_ints(&[0, 0, 1, 1, 0, 0, -1, -1, 1])
        );
    }

    #[test]
    fn partial_derivative_examples() {
        let h = bridge_poly();
        let d3 = h.partial_derivative(Component::new(3, 5).unwrap());
        assert_eq!(d3.diagonal(), UniPoly::from_ints(&[0, 0, 2, -4, 2]));

        let mut single = MultiPoly::zero(3);
        single.insert(subset(&[1, 2], 3), int(1));
        let d = single.partial_derivative(Component::new(3, 3).unwrap());
        assert_eq!(d.term_count(), 0);
    }

    #[test]
    fn partial_derivative_matches_cofactor_difference() {
        // d_k h agrees with h(1_k, .) - h(0_k, .) at random rational points.
        let h = bridge_poly();
        let k = Component::new(2, 5).unwrap();
        let d = h.partial_derivative(k);
        let points = [
            [
                ratio(1, 2),
                ratio(1, 3),
                ratio(2, 7),
                ratio(3, 5),
                ratio(9, 11),
            ],
            [
                ratio(1, 7),
                ratio(5, 6),
                ratio(1, 2),
                ratio(2, 3),
                ratio(1, 13),
            ],
        ];
        for point in points {
            let mut hi = point.clone();
            hi[1] = int(1);
            let mut lo = point.clone();
            lo[1] = int(0);
            let diff = h.eval(&hi).unwrap() - h.eval(&lo).unwrap();
            assert_eq!(d.eval(&point).unwrap(), diff);
        }
    }

    #[test]
    fn diagonal_sections() {
        assert_eq!(
            bridge_poly().diagonal(),
            UniPoly::from_ints(&[0, 0, 2, 2, -5, 2])
        );
        assert_eq!(MultiPoly::zero(4).diagonal(), UniPoly::zero());

        let s = Structure::parse("x1&x2 | x2&x3&x4 | x3&x4&x5&x6", 6).unwrap();
        let h = MultiPoly::reliability(&s).unwrap();
        assert_eq!(h.diagonal(), UniPoly::from_ints(&[0, 0, 1, 1, 0, -1]));
    }

    #[test]
    fn eval_at_points() {
        let h = bridge_poly();
        assert_eq!(h.eval(&vec![int(1); 5]).unwrap(), int(1));
        assert_eq!(h.eval(&vec![int(0); 5]).unwrap(), int(0));
        assert_eq!(h.eval(&vec![ratio(1, 2); 5]).unwrap(), ratio(1, 2));
        assert!(h.eval(&vec![int(1); 4]).is_err());
    }

    #[test]
    fn k_of_gate_expansion() {
        let s = Structure::parse("kof(2;x1,x2,x3)", 3).unwrap();
        let h = MultiPoly::reliability(&s).unwrap();
        // x1x2 + x1x3 + x2x3 - 2 x1x2x3
        assert_eq!(h.coefficient(subset(&[1, 2], 3)), int(1));
        assert_eq!(h.coefficient(subset(&[1, 3], 3)), int(1));
        assert_eq!(h.coefficient(subset(&[2, 3], 3)), int(1));
        assert_eq!(h.coefficient(subset(&[1, 2, 3], 3)), int(-2));
        assert_eq!(h.term_count(), 4);
    }

    #[test]
    fn json_shape() {
        let mut p = MultiPoly::zero(5);
        p.insert(subset(&[1, 4], 5), int(1));
        p.insert(subset(&[2, 5], 5), int(-2));
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"{"n":5,"terms":[{"subset":[1,4],"coef":"1"},{"subset":[2,5],"coef":"-2"}]}"#
        );
        let back: MultiPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
