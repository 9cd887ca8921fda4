//! The lattice vertex superalgebra `F₋₁` on `ℤβ` with `⟨β,β⟩ = -1`.
//!
//! A basis monomial is `β(-n₁)⋯β(-n_k) e^{mβ}`. The Heisenberg mode `β(n)`,
//! `n > 0`, acts as `-n ∂/∂β(-n)`, and `β(0)` multiplies by `⟨β, mβ⟩ = -m`.
//!
//! The exponential operators use the two-cocycle `ε(mβ, nβ) = (-1)^{mn}`:
//! applying `e^{±β}` to a charge-`m` vector picks up `(-1)^m`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::exact::{binomial, factorial, partitions, LinComb, Scalar, Sign};

/// `β(-n₁)⋯β(-n_k) e^{mβ}` with parts stored in decreasing order.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct LatticeMonomial {
    charge: i64,
    parts: Vec<i64>,
}

pub type LatticeVector = LinComb<LatticeMonomial>;

impl LatticeMonomial {
    pub fn vacuum() -> Self {
        Self::default()
    }

    /// `e^{mβ}`.
    pub fn exp(charge: i64) -> Self {
        LatticeMonomial {
            charge,
            parts: Vec::new(),
        }
    }

    pub fn new(charge: i64, mut parts: Vec<i64>) -> Result<Self> {
        if parts.iter().any(|p| *p <= 0) {
            return Err(CoreError::InvalidArgument(format!(
                "Heisenberg parts must be positive: {parts:?}"
            )));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(LatticeMonomial { charge, parts })
    }

    pub fn charge(&self) -> i64 {
        self.charge
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    /// Heisenberg degree `Σ parts`.
    pub fn degree(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// `β(0)` eigenvalue.
    pub fn beta_zero(&self) -> i64 {
        -self.charge
    }

    /// `e^{mβ}` is odd exactly when `m` is odd.
    pub fn is_odd(&self) -> bool {
        self.charge.rem_euclid(2) == 1
    }

    pub fn multiplicity(&self, part: i64) -> usize {
        self.parts.iter().filter(|p| **p == part).count()
    }

    fn with_parts(charge: i64, parts: Vec<i64>) -> Self {
        let mut parts = parts;
        parts.sort_unstable_by(|a, b| b.cmp(a));
        LatticeMonomial { charge, parts }
    }
}

impl Ord for LatticeMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.charge
            .cmp(&other.charge)
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for LatticeMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LatticeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.parts {
            write!(f, "β({})", -p)?;
        }
        match self.charge {
            0 => write!(f, "𝟙"),
            1 => write!(f, "e^β"),
            -1 => write!(f, "e^-β"),
            m => write!(f, "e^{m}β"),
        }
    }
}

impl fmt::Debug for LatticeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `β(n)` on a single monomial.
pub fn beta_apply_mono(n: i64, m: &LatticeMonomial) -> LatticeVector {
    match n.cmp(&0) {
        Ordering::Less => {
            let mut parts = m.parts.clone();
            parts.push(-n);
            LatticeVector::basis(LatticeMonomial::with_parts(m.charge, parts))
        }
        Ordering::Equal => LatticeVector::term(m.clone(), Scalar::from_int(m.beta_zero())),
        Ordering::Greater => {
            let mult = m.multiplicity(n) as i64;
            if mult == 0 {
                return LatticeVector::zero();
            }
            let mut parts = m.parts.clone();
            let pos = parts.iter().position(|p| *p == n).expect("part present");
            parts.remove(pos);
            LatticeVector::term(
                LatticeMonomial {
                    charge: m.charge,
                    parts,
                },
                Scalar::from_int(-n * mult),
            )
        }
    }
}

pub fn beta_apply(n: i64, v: &LatticeVector) -> LatticeVector {
    v.map_linear(|m| beta_apply_mono(n, m))
}

/// Largest mode `n` for which `e^{sign β}_n` can be nonzero on `m`.
pub fn expbeta_max_mode(sign: Sign, m: &LatticeMonomial) -> i64 {
    m.degree() - 1 + sign.value() * m.charge
}

/// Sub-multisets of a decreasing list of parts, as (removed parts, remaining
/// parts, coefficient `∏ σ^{c_j} C(a_j, c_j)`).
fn removals(parts: &[i64], sigma: i64) -> Vec<(i64, Vec<i64>, Scalar)> {
    let mut groups: Vec<(i64, u64)> = Vec::new();
    for p in parts {
        match groups.last_mut() {
            Some((q, c)) if q == p => *c += 1,
            _ => groups.push((*p, 1)),
        }
    }
    let mut out = vec![(0i64, Vec::new(), Scalar::one())];
    for (part, count) in groups {
        let mut next = Vec::new();
        for (removed, remaining, coeff) in &out {
            for c in 0..=count {
                let mut rest = remaining.clone();
                rest.extend(std::iter::repeat_n(part, (count - c) as usize));
                let sign = if sigma < 0 && c % 2 == 1 { -1 } else { 1 };
                let k = &(coeff * &binomial(count, c)) * &Scalar::from_int(sign);
                next.push((removed + part * c as i64, rest, k));
            }
        }
        out = next;
    }
    out
}

/// Coefficient `∏ (σ/j)^{c_j} / c_j!` of a partition in `exp(Σ σ β(-j) z^j / j)`.
fn creation_coeff(partition: &[i64], sigma: i64) -> Scalar {
    let mut acc = Scalar::one();
    let mut i = 0;
    while i < partition.len() {
        let j = partition[i];
        let c = partition[i..].iter().take_while(|p| **p == j).count();
        acc = &acc * &Scalar::frac(sigma, j).pow(c as u32);
        acc = &acc / &factorial(c as u64);
        i += c;
    }
    acc
}

/// The mode `e^{sign β}_n` on a single monomial.
///
/// `Y(e^{σβ}, z) = Σ_n e^{σβ}_n z^{-n-1}` is the product of the two
/// Heisenberg exponentials, the charge shift with cocycle sign `(-1)^m` and
/// `z^{-σm}` on charge `m`.
pub fn expbeta_apply_mono(sign: Sign, n: i64, m: &LatticeMonomial) -> LatticeVector {
    let sigma = sign.value();
    let target = m.degree() - n - 1 + sigma * m.charge;
    if target < 0 {
        return LatticeVector::zero();
    }
    let cocycle = if m.charge.rem_euclid(2) == 1 {
        -Scalar::one()
    } else {
        Scalar::one()
    };
    let mut out = LatticeVector::zero();
    for (removed, rest, coeff) in removals(&m.parts, sigma) {
        let added = removed - n - 1 + sigma * m.charge;
        if added < 0 {
            continue;
        }
        for lambda in partitions(added) {
            let mut parts = rest.clone();
            parts.extend_from_slice(&lambda);
            let c = &(&coeff * &creation_coeff(&lambda, sigma)) * &cocycle;
            out.add_term(LatticeMonomial::with_parts(m.charge + sigma, parts), c);
        }
    }
    out
}

pub fn expbeta_apply(sign: Sign, n: i64, v: &LatticeVector) -> LatticeVector {
    v.map_linear(|m| expbeta_apply_mono(sign, n, m))
}

/// Monomials of fixed charge with Heisenberg degree at most `max_degree`.
pub fn lattice_basis(max_degree: i64, charge: i64) -> Vec<LatticeMonomial> {
    let mut out: Vec<LatticeMonomial> = (0..=max_degree)
        .flat_map(partitions)
        .map(|p| LatticeMonomial::with_parts(charge, p))
        .collect();
    out.sort();
    out
}

/// Monomials of fixed charge and exact Heisenberg degree.
pub fn lattice_basis_exact(degree: i64, charge: i64) -> Vec<LatticeMonomial> {
    partitions(degree)
        .into_iter()
        .map(|p| LatticeMonomial::with_parts(charge, p))
        .collect()
}
