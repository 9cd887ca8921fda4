//! The fermionic Fock space `F` generated by `Ψ±(r)`, `r ∈ ℤ + ½`.
//!
//! A basis monomial is `Ψ⁺(-r₁)⋯Ψ⁺(-r_a)Ψ⁻(-s₁)⋯Ψ⁻(-s_b)𝟙` with
//! `r₁ > ⋯ > r_a > 0` and `s₁ > ⋯ > s_b > 0`. Modes are stored doubled, so
//! every stored entry is a positive odd integer.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::exact::{HalfInt, LinComb, Scalar, Sign};
use crate::report::RelationReport;

/// A canonically ordered fermionic monomial.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct FermionMonomial {
    plus: Vec<i64>,
    minus: Vec<i64>,
}

pub type FockVector = LinComb<FermionMonomial>;

fn check_block(block: &mut Vec<i64>) -> Result<()> {
    if block.iter().any(|t| *t <= 0 || t % 2 == 0) {
        return Err(CoreError::InvalidArgument(format!(
            "doubled fermion modes must be positive and odd: {block:?}"
        )));
    }
    block.sort_unstable_by(|a, b| b.cmp(a));
    if block.windows(2).any(|w| w[0] == w[1]) {
        return Err(CoreError::InvalidArgument(format!("repeated fermion mode: {block:?}")));
    }
    Ok(())
}

impl FermionMonomial {
    pub fn vacuum() -> Self {
        Self::default()
    }

    /// Builds a monomial from doubled modes; entry `t` stands for `Ψ(-t/2)`.
    /// Entries are sorted; repeats are rejected since `Ψ(r)² = 0`.
    pub fn from_twice(mut plus: Vec<i64>, mut minus: Vec<i64>) -> Result<Self> {
        check_block(&mut plus)?;
        check_block(&mut minus)?;
        Ok(FermionMonomial { plus, minus })
    }

    pub fn plus(&self) -> &[i64] {
        &self.plus
    }

    pub fn minus(&self) -> &[i64] {
        &self.minus
    }

    pub fn block(&self, sign: Sign) -> &[i64] {
        match sign {
            Sign::Plus => &self.plus,
            Sign::Minus => &self.minus,
        }
    }

    pub fn is_vacuum(&self) -> bool {
        self.plus.is_empty() && self.minus.is_empty()
    }

    /// Number of factors.
    pub fn len(&self) -> usize {
        self.plus.len() + self.minus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.is_vacuum()
    }

    pub fn is_odd(&self) -> bool {
        self.len() % 2 == 1
    }

    /// `J^f(0)` eigenvalue `|plus| - |minus|`.
    pub fn charge(&self) -> i64 {
        self.plus.len() as i64 - self.minus.len() as i64
    }

    /// `L^f(0)` eigenvalue, the sum of all modes.
    pub fn weight(&self) -> HalfInt {
        HalfInt::from_twice(self.plus.iter().chain(&self.minus).sum())
    }

    /// Largest doubled mode present, `-1` for the vacuum.
    pub fn max_mode_twice(&self) -> i64 {
        let p = self.plus.first().copied().unwrap_or(-1);
        let m = self.minus.first().copied().unwrap_or(-1);
        p.max(m)
    }

    pub fn contains(&self, sign: Sign, twice: i64) -> bool {
        self.block(sign).contains(&twice)
    }

    /// Applies `Ψ^sign(r)` to the monomial.
    ///
    /// Returns `None` for a zero result, otherwise the sign flip and the new
    /// monomial.
    pub fn apply_psi(&self, sign: Sign, r: HalfInt) -> Option<(bool, FermionMonomial)> {
        assert!(r.is_half_odd(), "fermion modes lie in ℤ + ½, got {r}");
        let t = r.twice();
        if t < 0 {
            let t = -t;
            let block = self.block(sign);
            let pos = block.iter().take_while(|x| **x > t).count();
            if block.get(pos) == Some(&t) {
                return None;
            }
            let offset = match sign {
                Sign::Plus => 0,
                Sign::Minus => self.plus.len(),
            };
            let mut out = self.clone();
            match sign {
                Sign::Plus => out.plus.insert(pos, t),
                Sign::Minus => out.minus.insert(pos, t),
            }
            Some(((offset + pos) % 2 == 1, out))
        } else {
            let other = sign.opposite();
            let block = self.block(other);
            let pos = block.iter().position(|x| *x == t)?;
            let offset = match other {
                Sign::Plus => 0,
                Sign::Minus => self.plus.len(),
            };
            let mut out = self.clone();
            match other {
                Sign::Plus => out.plus.remove(pos),
                Sign::Minus => out.minus.remove(pos),
            };
            Some(((offset + pos) % 2 == 1, out))
        }
    }
}

impl Ord for FermionMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.charge()
            .cmp(&other.charge())
            .then_with(|| self.weight().cmp(&other.weight()))
            .then_with(|| self.plus.cmp(&other.plus))
            .then_with(|| self.minus.cmp(&other.minus))
    }
}

impl PartialOrd for FermionMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FermionMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.plus {
            write!(f, "Ψ+({})", HalfInt::from_twice(-t))?;
        }
        for t in &self.minus {
            write!(f, "Ψ-({})", HalfInt::from_twice(-t))?;
        }
        write!(f, "𝟙")
    }
}

impl fmt::Debug for FermionMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Applies `Ψ^sign(r)` to a vector.
pub fn psi_apply(sign: Sign, r: HalfInt, v: &FockVector) -> FockVector {
    v.map_linear(|m| match m.apply_psi(sign, r) {
        None => FockVector::zero(),
        Some((neg, out)) => FockVector::term(out, if neg { -Scalar::one() } else { Scalar::one() }),
    })
}

/// The three distinguished subspaces `F`, `F̃ = Ker Ψ⁻(½)` and
/// `F̄ = Ker Ψ⁻(½) ∩ Ker Ψ⁺(½)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum SubspaceTag {
    F,
    Tilde,
    Bar,
}

/// A subspace of `F` spanned by the monomials avoiding at most one plus mode
/// and one minus mode.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Carrier {
    excluded_plus: Option<i64>,
    excluded_minus: Option<i64>,
}

impl Carrier {
    pub fn full() -> Self {
        Carrier::default()
    }

    /// Monomials without the factors `Ψ⁺(-m-½)` and `Ψ⁻(-n-½)`.
    pub fn excluding(plus: Option<u32>, minus: Option<u32>) -> Self {
        Carrier {
            excluded_plus: plus.map(|m| 2 * m as i64 + 1),
            excluded_minus: minus.map(|n| 2 * n as i64 + 1),
        }
    }

    pub fn from_tag(tag: SubspaceTag) -> Self {
        match tag {
            SubspaceTag::F => Carrier::full(),
            SubspaceTag::Tilde => Carrier::excluding(Some(0), None),
            SubspaceTag::Bar => Carrier::excluding(Some(0), Some(0)),
        }
    }

    /// Doubled plus mode that may not occur.
    pub fn excluded_plus(&self) -> Option<i64> {
        self.excluded_plus
    }

    pub fn excluded_minus(&self) -> Option<i64> {
        self.excluded_minus
    }

    pub fn contains(&self, m: &FermionMonomial) -> bool {
        self.excluded_plus.is_none_or(|t| !m.plus.contains(&t))
            && self.excluded_minus.is_none_or(|t| !m.minus.contains(&t))
    }

    pub fn contains_vector(&self, v: &FockVector) -> bool {
        v.keys().all(|m| self.contains(m))
    }

    /// Carrier monomials of weight at most `max_weight`, optionally of fixed
    /// charge, in the canonical order.
    pub fn basis(&self, max_weight: HalfInt, charge: Option<i64>) -> Vec<FermionMonomial> {
        let cap = max_weight.twice();
        if cap < 0 {
            return Vec::new();
        }
        let pluses = distinct_odd_sets(cap, self.excluded_plus);
        let minuses = distinct_odd_sets(cap, self.excluded_minus);
        let mut out = Vec::new();
        for (p, ps) in &pluses {
            for (m, ms) in &minuses {
                if ps + ms > cap {
                    continue;
                }
                if charge.is_some_and(|c| p.len() as i64 - m.len() as i64 != c) {
                    continue;
                }
                out.push(FermionMonomial {
                    plus: p.clone(),
                    minus: m.clone(),
                });
            }
        }
        out.sort();
        out
    }

    /// Carrier monomials of exactly the given weight and charge.
    pub fn basis_exact(&self, weight: HalfInt, charge: i64) -> Vec<FermionMonomial> {
        let mut out = self.basis(weight, Some(charge));
        out.retain(|m| m.weight() == weight);
        out
    }
}

/// All strictly decreasing lists of positive odd integers, avoiding
/// `excluded`, with sum at most `cap`; each list is returned with its sum.
fn distinct_odd_sets(cap: i64, excluded: Option<i64>) -> Vec<(Vec<i64>, i64)> {
    fn rec(
        limit: i64,
        remaining: i64,
        excluded: Option<i64>,
        cur: &mut Vec<i64>,
        sum: i64,
        out: &mut Vec<(Vec<i64>, i64)>,
    ) {
        out.push((cur.clone(), sum));
        let mut t = 1;
        while t < limit && t <= remaining {
            if Some(t) != excluded {
                cur.push(t);
                rec(t, remaining - t, excluded, cur, sum + t, out);
                cur.pop();
            }
            t += 2;
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec(i64::MAX, cap, excluded, &mut cur, 0, &mut out);
    out
}

/// Charge, weight and subspace membership of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FockGrade {
    pub charge: i64,
    pub weight: HalfInt,
    pub tags: BTreeSet<SubspaceTag>,
}

pub fn fock_grade(m: &FermionMonomial) -> FockGrade {
    let tags = [SubspaceTag::F, SubspaceTag::Tilde, SubspaceTag::Bar]
        .into_iter()
        .filter(|t| Carrier::from_tag(*t).contains(m))
        .collect();
    FockGrade {
        charge: m.charge(),
        weight: m.weight(),
        tags,
    }
}

/// Basis of the tagged subspace up to `max_weight`.
pub fn fock_basis(tag: SubspaceTag, max_weight: HalfInt, charge: Option<i64>) -> Vec<FermionMonomial> {
    Carrier::from_tag(tag).basis(max_weight, charge)
}

/// Checks `{Ψ⁺(r),Ψ⁻(s)} = δ_{r+s,0}` and `{Ψ^σ(r),Ψ^σ(s)} = 0` on every
/// basis monomial of weight `≤ max_weight`, for `|r|, |s| ≤ max_mode`.
pub fn clifford_relation_check(max_mode: HalfInt, max_weight: HalfInt) -> RelationReport {
    let top = max_mode.twice();
    let modes: Vec<HalfInt> = (-top..=top)
        .filter(|t| t.rem_euclid(2) == 1)
        .map(HalfInt::from_twice)
        .collect();
    let mut report = RelationReport::default();
    for m in Carrier::full().basis(max_weight, None) {
        let v = FockVector::basis(m.clone());
        for a in [Sign::Plus, Sign::Minus] {
            for &r in &modes {
                let rv = psi_apply(a, r, &v);
                for b in [Sign::Plus, Sign::Minus] {
                    for &s in &modes {
                        let mut lhs = psi_apply(a, r, &psi_apply(b, s, &v));
                        lhs.add_scaled(&Scalar::one(), &psi_apply(b, s, &rv));
                        if a != b && r + s == HalfInt::ZERO {
                            lhs.add_scaled(&-Scalar::one(), &v);
                        }
                        report.record(
                            || format!("{{Ψ{}({r}), Ψ{}({s})}}", a.symbol(), b.symbol()),
                            || m.to_string(),
                            &lhs,
                            lhs.is_zero(),
                        );
                    }
                }
            }
        }
    }
    report
}
