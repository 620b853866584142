//! System signatures and tail signatures.
//!
//! The main pipeline computes the tail signature from the diagonal section
//! `h(x)` of the reliability function alone: reflect `h` within degree `n`,
//! expand about 1, and divide the coefficient of `x^k` by `C(n, k)`. Two
//! independent oracles (Boland's subset-counting formula and the direct
//! cardinality-average of the structure) are provided for cross-checking,
//! together with the coherence tests derived from the degree of `h(x)`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{
    binomial_rational, decimal_vec, format_rational, format_vec, parse_rational, Rational,
};
use crate::structure::{Structure, Subset};
use crate::unipoly::UniPoly;

/// Tail signature `(S_0, ..., S_n)`: entry `k` is the probability that the
/// system survives the first `k` component failures.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TailSignature {
    values: Vec<Rational>,
}

impl TailSignature {
    /// Validates: starts at 1, ends at 0, nonincreasing, all entries in \[0,1\].
    pub fn new(values: Vec<Rational>) -> Result<TailSignature> {
        if values.len() < 2 {
            return Err(Error::InvalidTailSignature(
                "needs at least two entries".to_string(),
            ));
        }
        if !values[0].is_one() {
            return Err(Error::InvalidTailSignature(format!(
                "entry 0 is {}, expected 1",
                format_rational(&values[0])
            )));
        }
        if !values[values.len() - 1].is_zero() {
            return Err(Error::InvalidTailSignature(format!(
                "entry {} is {}, expected 0",
                values.len() - 1,
                format_rational(&values[values.len() - 1])
            )));
        }
        for (k, pair) in values.windows(2).enumerate() {
            if pair[1] > pair[0] {
                return Err(Error::InvalidTailSignature(format!(
                    "entries {} and {} increase",
                    k,
                    k + 1
                )));
            }
        }
        for (k, v) in values.iter().enumerate() {
            if v.is_negative() || v > &Rational::one() {
                return Err(Error::InvalidTailSignature(format!(
                    "entry {} = {} outside [0,1]",
                    k,
                    format_rational(v)
                )));
            }
        }
        Ok(TailSignature { values })
    }

    /// Number of components (one less than the entry count).
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Successive differences `s_k = S_{k-1} - S_k`.
    pub fn to_signature(&self) -> Signature {
        let values = self
            .values
            .windows(2)
            .map(|pair| &pair[0] - &pair[1])
            .collect();
        Signature { values }
    }

    /// Partial-sum conversion: `S_k = sum_{i > k} s_i`.
    pub fn from_signature(signature: &Signature) -> TailSignature {
        let mut values = Vec::with_capacity(signature.n() + 1);
        let mut acc = Rational::one();
        values.push(acc.clone());
        for s in signature.values() {
            acc -= s;
            values.push(acc.clone());
        }
        // The last entry is exactly zero because the signature sums to 1.
        TailSignature { values }
    }

    pub fn formatted(&self) -> Vec<String> {
        format_vec(&self.values)
    }

    pub fn decimals(&self) -> Vec<String> {
        decimal_vec(&self.values)
    }
}

/// Signature `(s_1, ..., s_n)`: entry `k` is the probability that the k-th
/// component failure takes the system down.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Signature {
    values: Vec<Rational>,
}

impl Signature {
    /// Validates: entries in \[0,1\] and summing to exactly 1.
    pub fn new(values: Vec<Rational>) -> Result<Signature> {
        if values.is_empty() {
            return Err(Error::InvalidSignature("empty".to_string()));
        }
        for (k, v) in values.iter().enumerate() {
            if v.is_negative() || v > &Rational::one() {
                return Err(Error::InvalidSignature(format!(
                    "entry {} = {} outside [0,1]",
                    k + 1,
                    format_rational(v)
                )));
            }
        }
        let total: Rational = values.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidSignature(format!(
                "sums to {}, expected 1",
                format_rational(&total)
            )));
        }
        Ok(Signature { values })
    }

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

impl Serialize for TailSignature {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.formatted())
    }
}

impl<'de> Deserialize<'de> for TailSignature {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        let values = strings
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        TailSignature::new(values).map_err(D::Error::custom)
    }
}

impl Serialize for Signature {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.formatted())
    }
}

impl<'de> Deserialize<'de> for Signature {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        let values = strings
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Signature::new(values).map_err(D::Error::custom)
    }
}

/// Tail signature from an n-reflected diagonal. The coefficient of `x^k`
/// in `p(x+1)` equals `C(n,k) * S_k`; the resulting vector is validated so
/// that an input that was not the reflected diagonal of a semicoherent
/// system on `n` components is reported instead of silently accepted.
pub fn tail_from_reflected(reflected: &UniPoly, n: usize) -> Result<TailSignature> {
    if let Some(d) = reflected.degree() {
        if d > n {
            return Err(Error::DegreeExceedsN { degree: d, n });
        }
    }
    let shifted = reflected.taylor_shift(&Rational::one());
    let values = (0..=n)
        .map(|k| shifted.coefficient(k) / binomial_rational(n, k))
        .collect();
    TailSignature::new(values)
}

/// Tail signature from the diagonal section `h(x)` and an explicit `n`.
///
/// `n` is never inferred from the degree: the same polynomial can be the
/// diagonal of systems with different component counts, with different
/// signatures.
pub fn tail_from_diagonal(diagonal: &UniPoly, n: usize) -> Result<TailSignature> {
    let reflected = diagonal.reflected(n)?;
    tail_from_reflected(&reflected, n)
}

/// Number of working subsets of each cardinality, `counts[m] = #{A : |A| = m,
/// phi(A) = 1}`. Shared base of the two counting oracles.
fn path_counts_by_size(s: &Structure) -> Result<Vec<u64>> {
    s.require_semicoherent()?;
    let table = s.truth_table()?;
    let mut counts = vec![0u64; s.n() + 1];
    for (mask, &working) in table.entries().iter().enumerate() {
        if working {
            counts[mask.count_ones() as usize] += 1;
        }
    }
    Ok(counts)
}

/// Boland's formula: `s_k` as the difference of cardinality-wise averages
/// of the structure function. Enumerates the truth table; serves as an
/// oracle for the reflected-polynomial pipeline.
pub fn boland_signature(s: &Structure) -> Result<Signature> {
    let n = s.n();
    let counts = path_counts_by_size(s)?;
    let average = |m: usize| Rational::from_integer(counts[m].into()) / binomial_rational(n, m);
    let values = (1..=n)
        .map(|k| average(n - k + 1) - average(n - k))
        .collect();
    Signature::new(values)
}

/// Direct counting oracle for the tail signature:
/// `S_k = (sum_{|A| = n-k} phi(A)) / C(n, n-k)`.
pub fn tail_counting_oracle(s: &Structure) -> Result<TailSignature> {
    let n = s.n();
    let counts = path_counts_by_size(s)?;
    let values = (0..=n)
        .map(|k| Rational::from_integer(counts[n - k].into()) / binomial_rational(n, n - k))
        .collect();
    TailSignature::new(values)
}

/// Relative quality function: a weight for every subset, nonnegative and
/// summing to 1 within each cardinality.
#[derive(Clone, Debug)]
pub struct QualityTable {
    n: usize,
    weights: Vec<Rational>,
}

impl QualityTable {
    pub fn new(n: usize, values: &BTreeMap<Subset, Rational>) -> Result<QualityTable> {
        if n > crate::structure::ENUMERATION_CAP {
            return Err(Error::EnumerationCap {
                n,
                cap: crate::structure::ENUMERATION_CAP,
            });
        }
        let size = 1usize << n;
        let mut weights = Vec::with_capacity(size);
        for mask in 0..size {
            let s = Subset::from_bits(mask as u64);
            let w = values.get(&s).ok_or_else(|| Error::MissingSubset {
                subset: s.indices(),
            })?;
            if w.is_negative() {
                return Err(Error::InvalidQualityTable(format!(
                    "negative weight at {s:?}"
                )));
            }
            weights.push(w.clone());
        }
        let mut sums = vec![Rational::zero(); n + 1];
        for (mask, w) in weights.iter().enumerate() {
            sums[mask.count_ones() as usize] += w;
        }
        for (m, total) in sums.iter().enumerate() {
            if !total.is_one() {
                return Err(Error::InvalidQualityTable(format!(
                    "cardinality {} sums to {}, expected 1",
                    m,
                    format_rational(total)
                )));
            }
        }
        Ok(QualityTable { n, weights })
    }

    /// The exchangeable-case table `q(A) = 1 / C(n, |A|)`.
    pub fn uniform(n: usize) -> QualityTable {
        let size = 1usize << n;
        let weights = (0..size)
            .map(|mask| Rational::one() / binomial_rational(n, mask.count_ones() as usize))
            .collect();
        QualityTable { n, weights }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, s: Subset) -> &Rational {
        &self.weights[s.bits() as usize]
    }
}

/// Probability tail signature under a relative quality function:
/// entry `k` is `sum_{|A| = n-k} q(A) phi(A)`. With the uniform table this
/// reduces to [`tail_counting_oracle`].
pub fn probability_tail_signature(s: &Structure, q: &QualityTable) -> Result<Vec<Rational>> {
    let n = s.n();
    if q.n() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            got: q.n(),
        });
    }
    let table = s.truth_table()?;
    let mut sums = vec![Rational::zero(); n + 1];
    for (mask, &working) in table.entries().iter().enumerate() {
        if working {
            sums[mask.count_ones() as usize] += &q.weights[mask];
        }
    }
    Ok((0..=n).map(|k| sums[n - k].clone()).collect())
}

/// The three equivalent coherence tests. All three are true or all three
/// are false; any of them being true certifies that every component is
/// relevant (the converse does not hold).
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CoherenceReport {
    /// `h(x)` has degree exactly `n`.
    pub degree_is_n: bool,
    /// The odd and even binomial-weighted tail sums differ.
    pub tail_condition: bool,
    /// The odd and even binomial-weighted signature sums differ.
    pub signature_condition: bool,
}

impl CoherenceReport {
    pub fn consistent(&self) -> bool {
        self.degree_is_n == self.tail_condition && self.tail_condition == self.signature_condition
    }

    /// True when the tests certify coherence.
    pub fn certifies_coherent(&self) -> bool {
        self.degree_is_n
    }
}

/// Evaluates the coherence tests from the diagonal section and `n`.
pub fn coherence_conditions(diagonal: &UniPoly, n: usize) -> Result<CoherenceReport> {
    let tail = tail_from_diagonal(diagonal, n)?;
    let signature = tail.to_signature();

    let degree_is_n = diagonal.degree() == Some(n);

    let mut tail_odd = Rational::zero();
    let mut tail_even = Rational::zero();
    for (k, v) in tail.values().iter().enumerate() {
        let weighted = binomial_rational(n, k) * v;
        if k % 2 == 1 {
            tail_odd += weighted;
        } else {
            tail_even += weighted;
        }
    }

    let mut sig_odd = Rational::zero();
    let mut sig_even = Rational::zero();
    for (i, v) in signature.values().iter().enumerate() {
        let k = i + 1;
        let weighted = binomial_rational(n - 1, k - 1) * v;
        if k % 2 == 1 {
            sig_odd += weighted;
        } else {
            sig_even += weighted;
        }
    }

    Ok(CoherenceReport {
        degree_is_n,
        tail_condition: tail_odd != tail_even,
        signature_condition: sig_odd != sig_even,
    })
}

/// Convenience wrapper computing the report straight from a structure.
pub fn coherence_conditions_of(s: &Structure) -> Result<CoherenceReport> {
    let h = crate::multilinear::MultiPoly::reliability(s)?;
    coherence_conditions(&h.diagonal(), s.n())
}
