//! Signature composition across modular decompositions.
//!
//! A system partitioned into disjoint modules is described by an organizing
//! structure over module slots plus one tail signature per module; the
//! composite signature is computed from those alone, with no access to the
//! modules' internal structures. Recurrent systems (all modules identical)
//! get a dedicated single-module entry point, and componentwise redundancy
//! (every module a parallel pair) has a closed form used for cross-checks.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multilinear::MultiPoly;
use crate::rational::{binomial_rational, parse_rational, Rational};
use crate::signature::{tail_from_reflected, Signature, TailSignature};
use crate::structure::{Structure, Subset};
use crate::unipoly::UniPoly;

/// A system assembled from disjoint modules: an organizing structure over
/// `r` slots and the size and tail signature of each module.
#[derive(Clone, Debug)]
pub struct ModularSystem {
    psi: Structure,
    modules: Vec<TailSignature>,
}

impl ModularSystem {
    /// Validates slot count against the module list and requires the
    /// organizing structure to be semicoherent.
    pub fn new(psi: Structure, modules: Vec<TailSignature>) -> Result<ModularSystem> {
        if modules.len() != psi.n() {
            return Err(Error::ModuleCountMismatch {
                expected: psi.n(),
                got: modules.len(),
            });
        }
        psi.require_semicoherent()?;
        Ok(ModularSystem { psi, modules })
    }

    pub fn slot_count(&self) -> usize {
        self.modules.len()
    }

    /// Total component count, summed over modules.
    pub fn n(&self) -> usize {
        self.modules.iter().map(TailSignature::n).sum()
    }

    pub fn modules(&self) -> &[TailSignature] {
        &self.modules
    }

    /// The n-reflected diagonal of the composite reliability function.
    ///
    /// Each coefficient term of the organizing structure's reliability
    /// function contributes its coefficient times
    /// `x^(n - sum of member sizes) * prod of member reflected polynomials`,
    /// keeping every exponent nonnegative by construction.
    pub fn compose_reflected(&self) -> Result<UniPoly> {
        let n = self.n();
        let reflected: Vec<UniPoly> = self.modules.iter().map(module_reflected).collect();
        let sizes: Vec<usize> = self.modules.iter().map(TailSignature::n).collect();

        let h_psi = MultiPoly::reliability(&self.psi)?;
        let mut acc = UniPoly::zero();
        for (slots, coef) in h_psi.terms() {
            let member_total: usize = slots
                .components()
                .map(|c| sizes[c.get() as usize - 1])
                .sum();
            debug_assert!(member_total <= n);
            let mut term = UniPoly::monomial(coef.clone(), n - member_total);
            for c in slots.components() {
                term = &term * &reflected[c.get() as usize - 1];
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Tail signature of the composite system.
    pub fn tail(&self) -> Result<TailSignature> {
        tail_from_reflected(&self.compose_reflected()?, self.n())
    }

    /// Signature of the composite system.
    pub fn signature(&self) -> Result<Signature> {
        Ok(self.tail()?.to_signature())
    }
}

/// The reflected diagonal of a module with the given tail signature:
/// `sum_k C(n_j, k) * S_k * (x - 1)^k`, expanded to the power basis.
pub fn module_reflected(tail: &TailSignature) -> UniPoly {
    let n = tail.n();
    let shifted_coeffs = tail
        .values()
        .iter()
        .enumerate()
        .map(|(k, s)| binomial_rational(n, k) * s)
        .collect();
    // Coefficients of (x-1)^k become a plain polynomial via the shift x -> x-1.
    UniPoly::from_coeffs(shifted_coeffs).taylor_shift(&-Rational::one())
}

/// Reflected diagonal of a recurrent system: `r` identical modules under an
/// organizing structure known only through its tail signature. Implements
/// `sum_k C(r,k) * S_psi_k * (x^m - hR)^k * hR^(r-k)` with `m = n / r`.
pub fn recurrent_reflected(
    psi_tail: &TailSignature,
    module_tail: &TailSignature,
    n: usize,
) -> Result<UniPoly> {
    let r = psi_tail.n();
    if !n.is_multiple_of(r) {
        return Err(Error::NotDivisible { n, r });
    }
    let m = n / r;
    if module_tail.n() != m {
        return Err(Error::LengthMismatch {
            expected: m + 1,
            got: module_tail.n() + 1,
        });
    }
    let h_chi = module_reflected(module_tail);
    let x_m = UniPoly::monomial(Rational::one(), m);
    let diff = &x_m - &h_chi;

    let mut acc = UniPoly::zero();
    for (k, s) in psi_tail.values().iter().enumerate() {
        let coef = binomial_rational(r, k) * s;
        let term = (&diff.pow(k) * &h_chi.pow(r - k)).scale(&coef);
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Closed-form tail of a componentwise-redundant system: every module is a
/// parallel pair, so the organizing tail over `r` slots expands into a tail
/// over `2r` components.
pub fn redundancy_tail(psi_tail: &TailSignature) -> TailSignature {
    let r = psi_tail.n();
    let n = 2 * r;
    let psi = psi_tail.values();
    let values: Vec<Rational> = (0..=n)
        .map(|ell| {
            let lo = ell.saturating_sub(r);
            let hi = ell / 2;
            (lo..=hi)
                .map(|k| {
                    let weight = binomial_rational(r, k) * binomial_rational(r - k, ell - 2 * k)
                        / binomial_rational(n, ell);
                    let doubling = Rational::from_integer(
                        num_bigint::BigInt::from(2).pow((ell - 2 * k) as u32),
                    );
                    weight * doubling * &psi[k]
                })
                .sum()
        })
        .collect();
    TailSignature::new(values).expect("convex combination of valid tails")
}

/// Flattens concrete module structures under an organizing structure into a
/// single truth table over all components. Used to cross-check the
/// signature-only composition; module components are numbered consecutively
/// in module order.
pub fn flatten(psi: &Structure, modules: &[Structure]) -> Result<Structure> {
    if modules.len() != psi.n() {
        return Err(Error::ModuleCountMismatch {
            expected: psi.n(),
            got: modules.len(),
        });
    }
    let sizes: Vec<usize> = modules.iter().map(Structure::n).collect();
    let n: usize = sizes.iter().sum();
    if n > crate::structure::ENUMERATION_CAP {
        return Err(Error::EnumerationCap {
            n,
            cap: crate::structure::ENUMERATION_CAP,
        });
    }
    let size = 1usize << n;
    let mut entries = Vec::with_capacity(size);
    for mask in 0..size {
        let mut slots = 0u64;
        let mut offset = 0;
        for (j, module) in modules.iter().enumerate() {
            let local = (mask >> offset) & ((1usize << sizes[j]) - 1);
            if module.eval(Subset::from_bits(local as u64)) {
                slots |= 1 << j;
            }
            offset += sizes[j];
        }
        entries.push(psi.eval(Subset::from_bits(slots)));
    }
    Structure::from_table(entries, n)
}

/// Module entry of the JSON input: size plus either a signature or a tail.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleField {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<Vec<String>>,
}

impl ModuleField {
    pub fn to_tail(&self) -> Result<TailSignature> {
        let tail = match (&self.signature, &self.tail) {
            (Some(sig), None) => {
                let values = sig
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()?;
                TailSignature::from_signature(&Signature::new(values)?)
            }
            (None, Some(tail)) => {
                let values = tail
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()?;
                TailSignature::new(values)?
            }
            _ => {
                return Err(Error::InvalidSignature(
                    "module needs exactly one of \"signature\" or \"tail\"".to_string(),
                ))
            }
        };
        if tail.n() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: tail.n(),
            });
        }
        Ok(tail)
    }
}

/// Organizing structure of the JSON input, as a DSL over `z1 ... zr`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PsiField {
    pub dsl: String,
    pub r: usize,
}

impl PsiField {
    pub fn to_structure(&self) -> Result<Structure> {
        Structure::parse_with_prefix(&self.dsl, self.r, 'z')
    }
}

/// Modular input file:
/// `{"psi": {"dsl": "z1&z2", "r": 2}, "modules": [{"n": 3, "signature": [...]}, ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModularFile {
    pub psi: PsiField,
    pub modules: Vec<ModuleField>,
}

impl ModularFile {
    pub fn to_system(&self) -> Result<ModularSystem> {
        let psi = self.psi.to_structure()?;
        let modules = self
            .modules
            .iter()
            .map(ModuleField::to_tail)
            .collect::<Result<Vec<_>>>()?;
        ModularSystem::new(psi, modules)
    }
}

/// Recurrent input file: slot count, the organizing tail (directly or as a
/// signature, or as a DSL whose tail is computed), and the repeated module.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RecurrentFile {
    pub r: usize,
    pub psi: RecurrentPsiField,
    pub module: ModuleField,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RecurrentPsiField {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dsl: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail: Option<Vec<String>>,
}

impl RecurrentFile {
    pub fn psi_tail(&self) -> Result<TailSignature> {
        let tail = match (&self.psi.dsl, &self.psi.signature, &self.psi.tail) {
            (Some(dsl), None, None) => {
                let psi = Structure::parse_with_prefix(dsl, self.r, 'z')?;
                crate::signature::tail_counting_oracle(&psi)?
            }
            (None, Some(sig), None) => {
                let values = sig
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()?;
                TailSignature::from_signature(&Signature::new(values)?)
            }
            (None, None, Some(tail)) => {
                let values = tail
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()?;
                TailSignature::new(values)?
            }
            _ => {
                return Err(Error::InvalidSignature(
                    "psi needs exactly one of \"dsl\", \"signature\", or \"tail\"".to_string(),
                ))
            }
        };
        if tail.n() != self.r {
            return Err(Error::LengthMismatch {
                expected: self.r + 1,
                got: tail.n() + 1,
            });
        }
        Ok(tail)
    }

    /// Total component count `r * n_module`.
    pub fn n(&self) -> usize {
        self.r * self.module.n
    }

    pub fn reflected(&self) -> Result<UniPoly> {
        recurrent_reflected(&self.psi_tail()?, &self.module.to_tail()?, self.n())
    }
}
