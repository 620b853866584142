//! Exact univariate polynomial algebra.
//!
//! Dense rational coefficients, lowest power first, with the operations the
//! signature pipeline needs: ring arithmetic, n-reflection, Taylor shift,
//! definite integration over \[0,1\], and conversions between the power and
//! Bernstein bases.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{binomial_rational, format_rational, parse_rational, Rational};

/// Univariate polynomial with exact rational coefficients.
///
/// Invariant: no trailing zero coefficients are stored; the zero polynomial
/// is the empty vector.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^power`.
    pub fn monomial(c: Rational, power: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        UniPoly { coeffs }
    }

    /// Builds from coefficients (lowest power first), trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| crate::rational::int(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest power with a nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the stored degree).
    pub fn coefficient(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The n-reflection `x^n * p(1/x)`: coefficient `i` of the result is
    /// coefficient `n - i` of `p`. Requires `deg(p) <= n`.
    pub fn reflected(&self, n: usize) -> Result<UniPoly> {
        if let Some(d) = self.degree() {
            if d > n {
                return Err(Error::DegreeExceedsN { degree: d, n });
            }
        }
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[n - i] = c.clone();
        }
        Ok(Self::from_coeffs(coeffs))
    }

    /// Taylor shift `p(x + a)` by repeated synthetic division. Exact, O(deg^2).
    pub fn taylor_shift(&self, a: &Rational) -> UniPoly {
        if a.is_zero() || self.is_zero() {
            return self.clone();
        }
        let mut c = self.coeffs.clone();
        let len = c.len();
        for i in 0..len {
            for j in (i..len - 1).rev() {
                let add = a * &c[j + 1];
                c[j] += add;
            }
        }
        Self::from_coeffs(c)
    }

    /// `p(a*x + b)`.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> UniPoly {
        let shifted = self.taylor_shift(b);
        let mut coeffs = shifted.coeffs;
        let mut power = Rational::one();
        for c in coeffs.iter_mut().skip(1) {
            power *= a;
            *c *= &power;
        }
        Self::from_coeffs(coeffs)
    }

    /// Definite integral over \[0,1\]: sum of `coeff_i / (i + 1)`.
    pub fn integrate_01(&self) -> Rational {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c / crate::rational::int(i as i64 + 1))
            .sum()
    }

    /// Coordinates `(b_0, ..., b_n)` of `p` in the degree-n Bernstein basis,
    /// so that `p = sum_k b_k * C(n,k) x^k (1-x)^(n-k)`. Requires `deg(p) <= n`.
    pub fn to_bernstein(&self, n: usize) -> Result<Vec<Rational>> {
        if let Some(d) = self.degree() {
            if d > n {
                return Err(Error::DegreeExceedsN { degree: d, n });
            }
        }
        let coords = (0..=n)
            .map(|k| {
                (0..=k)
                    .map(|i| {
                        self.coefficient(i) * binomial_rational(k, i) / binomial_rational(n, i)
                    })
                    .sum()
            })
            .collect();
        Ok(coords)
    }

    /// Inverse of [`to_bernstein`](Self::to_bernstein): power coefficients
    /// `a_k = C(n,k) * sum_i (-1)^(k-i) C(k,i) b_i`.
    pub fn from_bernstein(coords: &[Rational], n: usize) -> Result<UniPoly> {
        if coords.len() != n + 1 {
            return Err(Error::LengthMismatch {
                expected: n + 1,
                got: coords.len(),
            });
        }
        let coeffs = (0..=n)
            .map(|k| {
                let alternating: Rational = (0..=k)
                    .map(|i| {
                        let term = binomial_rational(k, i) * &coords[i];
                        if (k - i) % 2 == 0 {
                            term
                        } else {
                            -term
                        }
                    })
                    .sum();
                binomial_rational(n, k) * alternating
            })
            .collect();
        Ok(Self::from_coeffs(coeffs))
    }
}

/// The Bernstein basis polynomial `C(n,k) x^k (1-x)^(n-k)` in power form.
pub fn bernstein_basis(k: usize, n: usize) -> UniPoly {
    assert!(k <= n, "basis index {k} exceeds degree {n}");
    let x_k = UniPoly::monomial(binomial_rational(n, k), k);
    let one_minus_x = UniPoly::from_ints(&[1, -1]);
    &x_k * &one_minus_x.pow(n - k)
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.coefficient(i) + rhs.coefficient(i))
            .collect();
        UniPoly::from_coeffs(coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.coefficient(i) - rhs.coefficient(i))
            .collect();
        UniPoly::from_coeffs(coeffs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", format_rational(c))?,
                1 => write!(f, "{}*x", format_rational(c))?,
                _ => write!(f, "{}*x^{}", format_rational(c), i)?,
            }
        }
        Ok(())
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(format_rational))
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        let coeffs = strings
            .iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(Self::from_coeffs(coeffs))
    }
}
