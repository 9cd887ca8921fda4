//! The Weyl vertex algebra `W` and the Wakimoto action on it.
//!
//! `W` is the polynomial Fock module of the modes `a(n)`, `a*(n)` with
//! `[a(n), a*(m)] = δ_{n+m,0}`, where `a(z) = Σ a(n) z^{-n-1}` and
//! `a*(z) = Σ a*(n) z^{-n}`. The vacuum is killed by `a(n)`, `n ≥ 0`, and by
//! `a*(n)`, `n ≥ 1`, so `a(n ≥ 0)` acts as `∂/∂a*(-n)` and `a*(n ≥ 1)` as
//! `-∂/∂a(-n)`.
//!
//! The Wakimoto fields are
//!
//! ```text
//! e(z) = a(z),   h(z) = -2:a*(z)a(z): - χ(z),
//! f(z) = -:a*(z)²a(z): - 2∂a*(z) - a*(z)χ(z).
//! ```
//!
//! Inside `F̃ ⊗ F₋₁` the same modes are realized by `a = Ψ⁺(-3/2)𝟙 ⊗ e^β` and
//! `a* = -Ψ⁻(-½)𝟙 ⊗ e^{-β}`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::affine::{
    sl2_relation_check_on, AffineAction, CachedAction, Sl2Action, Sl2Gen, TensorMonomial, TensorVector,
};
use crate::amodule::{ModuleSpec, TwistedModule};
use crate::error::{CoreError, Result};
use crate::exact::{partitions, rref_span, HalfInt, LaurentData, LinComb, Scalar, Sign};
use crate::fock::{Carrier, FermionMonomial};
use crate::lattice::{expbeta_apply_mono, LatticeMonomial};
use crate::report::RelationReport;

/// `a(-n₁)⋯a(-n_k) a*(-m₁)⋯a*(-m_l) 𝟙` with `nᵢ ≥ 1`, `mⱼ ≥ 0`, both lists
/// decreasing.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct WeylMonomial {
    a_parts: Vec<i64>,
    astar_parts: Vec<i64>,
}

pub type WeylVector = LinComb<WeylMonomial>;

/// `a` or `a*`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum WeylGen {
    A,
    AStar,
}

impl fmt::Display for WeylGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeylGen::A => write!(f, "a"),
            WeylGen::AStar => write!(f, "a*"),
        }
    }
}

impl WeylMonomial {
    pub fn vacuum() -> Self {
        Self::default()
    }

    pub fn new(mut a_parts: Vec<i64>, mut astar_parts: Vec<i64>) -> Result<Self> {
        if a_parts.iter().any(|n| *n < 1) || astar_parts.iter().any(|n| *n < 0) {
            return Err(CoreError::InvalidArgument(format!(
                "a parts must be ≥ 1 and a* parts ≥ 0: {a_parts:?}, {astar_parts:?}"
            )));
        }
        a_parts.sort_unstable_by(|x, y| y.cmp(x));
        astar_parts.sort_unstable_by(|x, y| y.cmp(x));
        Ok(WeylMonomial { a_parts, astar_parts })
    }

    pub fn a_parts(&self) -> &[i64] {
        &self.a_parts
    }

    pub fn astar_parts(&self) -> &[i64] {
        &self.astar_parts
    }

    /// `L(0)` degree.
    pub fn degree(&self) -> i64 {
        self.a_parts.iter().sum::<i64>() + self.astar_parts.iter().sum::<i64>()
    }

    /// `#a - #a*`, which is the lattice charge of the realized vector.
    pub fn charge(&self) -> i64 {
        self.a_parts.len() as i64 - self.astar_parts.len() as i64
    }

    fn parts(&self, g: WeylGen) -> &[i64] {
        match g {
            WeylGen::A => &self.a_parts,
            WeylGen::AStar => &self.astar_parts,
        }
    }

    fn with_inserted(&self, g: WeylGen, part: i64) -> Self {
        let mut out = self.clone();
        let v = match g {
            WeylGen::A => &mut out.a_parts,
            WeylGen::AStar => &mut out.astar_parts,
        };
        let pos = v.iter().position(|p| *p < part).unwrap_or(v.len());
        v.insert(pos, part);
        out
    }

    fn with_removed(&self, g: WeylGen, part: i64) -> Option<(usize, Self)> {
        let mult = self.parts(g).iter().filter(|p| **p == part).count();
        if mult == 0 {
            return None;
        }
        let mut out = self.clone();
        let v = match g {
            WeylGen::A => &mut out.a_parts,
            WeylGen::AStar => &mut out.astar_parts,
        };
        let pos = v.iter().position(|p| *p == part).expect("present");
        v.remove(pos);
        Some((mult, out))
    }
}

impl fmt::Display for WeylMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for n in &self.a_parts {
            write!(f, "a({})", -n)?;
        }
        for n in &self.astar_parts {
            write!(f, "a*({})", -n)?;
        }
        write!(f, "𝟙")
    }
}

impl fmt::Debug for WeylMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Whether the mode annihilates the vacuum.
fn is_annihilator(g: WeylGen, n: i64) -> bool {
    match g {
        WeylGen::A => n >= 0,
        WeylGen::AStar => n >= 1,
    }
}

/// A single mode on a single monomial.
pub fn weyl_apply_mono(g: WeylGen, n: i64, m: &WeylMonomial) -> WeylVector {
    if !is_annihilator(g, n) {
        return WeylVector::basis(m.with_inserted(g, -n));
    }
    // Contract against the partner creation mode.
    let (partner, sign) = match g {
        WeylGen::A => (WeylGen::AStar, 1),
        WeylGen::AStar => (WeylGen::A, -1),
    };
    match m.with_removed(partner, n) {
        Some((mult, rest)) => WeylVector::term(rest, Scalar::from_int(sign * mult as i64)),
        None => WeylVector::zero(),
    }
}

pub fn weyl_apply(g: WeylGen, n: i64, v: &WeylVector) -> WeylVector {
    v.map_linear(|m| weyl_apply_mono(g, n, m))
}

/// A normal-ordered word: annihilators act first, then creators.
fn normal_word(word: &[(WeylGen, i64)], v: &WeylVector) -> WeylVector {
    let mut out = v.clone();
    for &(g, n) in word.iter().filter(|(g, n)| is_annihilator(*g, *n)) {
        out = weyl_apply(g, n, &out);
        if out.is_zero() {
            return out;
        }
    }
    for &(g, n) in word.iter().filter(|(g, n)| !is_annihilator(*g, *n)) {
        out = weyl_apply(g, n, &out);
    }
    out
}

/// The Wakimoto module `W₋χ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WakimotoAction {
    chi: LaurentData,
}

impl WakimotoAction {
    pub fn new(chi: LaurentData) -> Self {
        WakimotoAction { chi }
    }

    pub fn chi(&self) -> &LaurentData {
        &self.chi
    }

    fn h_mono(&self, n: i64, m: &WeylMonomial) -> WeylVector {
        let v = WeylVector::basis(m.clone());
        let d = m.degree();
        let mut out = WeylVector::zero();
        // :a*(k) a(n-k):, nonzero only when annihilators fit inside degree d.
        for k in (n - d - 1)..=(d + 1) {
            let w = normal_word(&[(WeylGen::AStar, k), (WeylGen::A, n - k)], &v);
            out.add_scaled(&Scalar::from_int(-2), &w);
        }
        out.add_scaled(&-self.chi.coeff(n), &v);
        out
    }

    fn f_mono(&self, n: i64, m: &WeylMonomial) -> WeylVector {
        let v = WeylVector::basis(m.clone());
        let d = m.degree();
        let mut out = WeylVector::zero();
        // :a*(p) a*(q) a(n-p-q):
        for p in (n - 2 * d - 2)..=(d + 1) {
            for q in (n - 2 * d - 2)..=(d + 1) {
                let w = normal_word(&[(WeylGen::AStar, p), (WeylGen::AStar, q), (WeylGen::A, n - p - q)], &v);
                out.add_scaled(&-Scalar::one(), &w);
            }
        }
        out.add_scaled(&Scalar::from_int(2 * n), &weyl_apply(WeylGen::AStar, n, &v));
        for (k, c) in self.chi.iter() {
            out.add_scaled(&-c, &weyl_apply(WeylGen::AStar, n - k, &v));
        }
        out
    }
}

impl Sl2Action for WakimotoAction {
    type Key = WeylMonomial;

    fn apply(&self, x: Sl2Gen, n: i64, k: &WeylMonomial) -> WeylVector {
        match x {
            Sl2Gen::E => weyl_apply_mono(WeylGen::A, n, k),
            Sl2Gen::H => self.h_mono(n, k),
            Sl2Gen::F => self.f_mono(n, k),
        }
    }
}

/// `x(n) v` in `W₋χ`.
pub fn wakimoto_apply(x: Sl2Gen, n: i64, chi: &LaurentData, v: &WeylVector) -> WeylVector {
    WakimotoAction::new(chi.clone()).apply_vec(x, n, v)
}

/// Monomials of degree at most `max_degree` with `|charge| ≤ max_charge`.
pub fn weyl_basis(max_degree: i64, max_charge: i64) -> Vec<WeylMonomial> {
    let mut out = Vec::new();
    for da in 0..=max_degree {
        for a in partitions(da) {
            for ds in 0..=(max_degree - da) {
                // a* parts may be zero: pad partitions of ds with zeros.
                for s in partitions(ds) {
                    let lo = (a.len() as i64 - max_charge).max(s.len() as i64);
                    let hi = a.len() as i64 + max_charge;
                    for len in lo..=hi {
                        let mut star = s.clone();
                        star.resize(len as usize, 0);
                        out.push(WeylMonomial {
                            a_parts: a.clone(),
                            astar_parts: star,
                        });
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Realized `a(n)` or `a*(n)` on one tensor monomial of `F̃ ⊗ F₋₁`:
///
/// ```text
/// a(n)  =  Σ_i (-i) Ψ⁺(i-½) ⊗ e^β_{n-i-1},
/// a*(n) = -Σ_j      Ψ⁻(j-½) ⊗ e^{-β}_{n-j-1},
/// ```
///
/// with the lattice factor passing the fermion factor with `(-1)^{p(u)}`.
pub fn realized_weyl_apply_mono(g: WeylGen, n: i64, t: &TensorMonomial) -> TensorVector {
    let sign = match g {
        WeylGen::A => Sign::Plus,
        WeylGen::AStar => Sign::Minus,
    };
    let koszul = if t.f.is_odd() { -1 } else { 1 };
    let lo = n - t.l.degree() - sign.value() * t.l.charge();
    let hi = (t.f.max_mode_twice() + 1) / 2 + 1;
    let mut out = TensorVector::zero();
    for i in lo..=hi {
        let coeff = match g {
            WeylGen::A => -i * koszul,
            WeylGen::AStar => -koszul,
        };
        if coeff == 0 {
            continue;
        }
        let Some((neg, f)) = t.f.apply_psi(sign, HalfInt::from_twice(2 * i - 1)) else {
            continue;
        };
        let lat = expbeta_apply_mono(sign, n - i - 1, &t.l);
        let c = Scalar::from_int(if neg { -coeff } else { coeff });
        for (l, cl) in lat.iter() {
            out.add_term(TensorMonomial::new(f.clone(), l.clone()), &c * cl);
        }
    }
    out
}

/// Realized mode on a vector; errors if the vector leaves `F̃ ⊗ F₋₁`.
pub fn realized_weyl_apply(g: WeylGen, n: i64, w: &TensorVector) -> Result<TensorVector> {
    let carrier = ModuleSpec::Tilde {
        chi: LaurentData::zero(),
    }
    .carrier();
    if let Some(t) = w.keys().find(|t| !carrier.contains(&t.f)) {
        return Err(CoreError::CarrierViolation(format!("{t} is not in F̃ ⊗ F₋₁")));
    }
    Ok(w.map_linear(|t| realized_weyl_apply_mono(g, n, t)))
}

/// `𝟙 ⊗ 𝟙`.
pub fn tensor_vacuum() -> TensorVector {
    TensorVector::basis(TensorMonomial::new(
        FermionMonomial::vacuum(),
        LatticeMonomial::vacuum(),
    ))
}

/// The map `W → F̃ ⊗ F₋₁` sending a monomial to the same word of realized
/// modes applied to `𝟙 ⊗ 𝟙`.
pub fn realize_monomial(m: &WeylMonomial) -> TensorVector {
    let mut v = tensor_vacuum();
    for n in m.astar_parts.iter().rev() {
        v = v.map_linear(|t| realized_weyl_apply_mono(WeylGen::AStar, -n, t));
    }
    for n in m.a_parts.iter().rev() {
        v = v.map_linear(|t| realized_weyl_apply_mono(WeylGen::A, -n, t));
    }
    v
}

pub fn realize(v: &WeylVector) -> TensorVector {
    v.map_linear(realize_monomial)
}

/// Checks `[a(n), a*(m)] = δ_{n+m,0}` and `[a,a] = [a*,a*] = 0` for
/// `|n|, |m| ≤ mode_bound`, through a caller-supplied action on given keys.
pub fn weyl_relation_check_on<K, F>(basis: &[K], mode_bound: i64, apply: F) -> RelationReport
where
    K: Ord + Clone + fmt::Display,
    F: Fn(WeylGen, i64, &LinComb<K>) -> LinComb<K>,
{
    let mut report = RelationReport::default();
    let modes: Vec<i64> = (-mode_bound..=mode_bound).collect();
    let gens = [WeylGen::A, WeylGen::AStar];
    for k in basis {
        let v = LinComb::basis(k.clone());
        for (gi, &x) in gens.iter().enumerate() {
            for &y in &gens[gi..] {
                for &n in &modes {
                    for &m in &modes {
                        let xy = apply(x, n, &apply(y, m, &v));
                        let yx = apply(y, m, &apply(x, n, &v));
                        let mut d = xy - yx;
                        if x != y && n + m == 0 {
                            d.add_scaled(&-Scalar::one(), &v);
                        }
                        let zero = d.is_zero();
                        report.record(|| format!("[{x}({n}), {y}({m})]"), || k.to_string(), &d, zero);
                    }
                }
            }
        }
    }
    report
}

/// Weyl relations on the abstract module `W`.
pub fn weyl_relation_check(mode_bound: i64, max_degree: i64, max_charge: i64) -> RelationReport {
    let basis = weyl_basis(max_degree, max_charge);
    weyl_relation_check_on(&basis, mode_bound, weyl_apply)
}

/// Weyl relations for the realized modes, on the images of the `W` basis.
pub fn realized_weyl_relation_check(mode_bound: i64, max_degree: i64, max_charge: i64) -> RelationReport {
    let mut basis: Vec<TensorMonomial> = weyl_basis(max_degree, max_charge)
        .iter()
        .flat_map(|m| realize_monomial(m).keys().cloned().collect::<Vec<_>>())
        .collect();
    basis.sort();
    basis.dedup();
    let memo: RefCell<HashMap<(WeylGen, i64, TensorMonomial), TensorVector>> = RefCell::default();
    weyl_relation_check_on(&basis, mode_bound, |g, n, v| {
        v.map_linear(|t| {
            let key = (g, n, t.clone());
            if let Some(hit) = memo.borrow().get(&key) {
                return hit.clone();
            }
            let img = realized_weyl_apply_mono(g, n, t);
            memo.borrow_mut().insert(key, img.clone());
            img
        })
    })
}

/// The `ŝl₂` relation suite on a truncation of `W₋χ`.
pub fn wakimoto_relation_check(chi: &LaurentData, mode_bound: i64, max_degree: i64, max_charge: i64) -> RelationReport {
    let basis = weyl_basis(max_degree, max_charge);
    sl2_relation_check_on(&WakimotoAction::new(chi.clone()), &basis, mode_bound)
}

/// Outcome of comparing `W₋χ` with `ℒ₀(F̃_χ)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IntertwinerReport {
    pub relations: RelationReport,
    /// Rank of the images of the truncated basis versus its size.
    pub rank: usize,
    pub basis_size: usize,
    /// `(degree, charge, dim W, dim of the sector-0 slice)` rows that differ.
    pub dimension_mismatches: Vec<(i64, i64, usize, usize)>,
}

impl IntertwinerReport {
    pub fn passed(&self) -> bool {
        self.relations.passed() && self.rank == self.basis_size && self.dimension_mismatches.is_empty()
    }
}

/// Checks `φ(x(n)w) = x(n)φ(w)` for `x ∈ {e,h,f}`, `|n| ≤ degree_bound` and
/// basis `w` with degree `≤ degree_bound`, `|charge| ≤ max_charge`, where the
/// right side is the action on `F̃_χ ⊗ F₋₁`. Also checks that `φ` is
/// injective on the truncation and that graded dimensions agree.
pub fn intertwiner_check(chi: &LaurentData, degree_bound: i64, max_charge: i64) -> IntertwinerReport {
    let wak = WakimotoAction::new(chi.clone());
    let tilde = AffineAction::new(TwistedModule::new(&ModuleSpec::Tilde { chi: chi.clone() }), 0);
    let tilde = CachedAction::new(&tilde);
    let basis = weyl_basis(degree_bound, max_charge);
    let mut report = IntertwinerReport {
        basis_size: basis.len(),
        ..Default::default()
    };
    let images: Vec<TensorVector> = basis.iter().map(realize_monomial).collect();
    let realized: RefCell<HashMap<WeylMonomial, TensorVector>> =
        RefCell::new(basis.iter().cloned().zip(images.iter().cloned()).collect());
    for (w, phi_w) in basis.iter().zip(&images) {
        for x in Sl2Gen::ALL {
            for n in -degree_bound..=degree_bound {
                let lhs = wak.apply(x, n, w).map_linear(|m| {
                    if let Some(hit) = realized.borrow().get(m) {
                        return hit.clone();
                    }
                    let img = realize_monomial(m);
                    realized.borrow_mut().insert(m.clone(), img.clone());
                    img
                });
                let rhs = tilde.apply_vec(x, n, phi_w);
                let d = lhs - rhs;
                let zero = d.is_zero();
                report
                    .relations
                    .record(|| format!("φ({x}({n})w) = {x}({n})φ(w)"), || w.to_string(), &d, zero);
            }
        }
    }
    report.rank = rref_span(&images).dimension();
    let carrier = ModuleSpec::Tilde {
        chi: LaurentData::zero(),
    }
    .carrier();
    for d in 0..=degree_bound {
        for q in -max_charge..=max_charge {
            let dim_w = basis.iter().filter(|m| m.degree() == d && m.charge() == q).count();
            let dim_f = sector_zero_count(&carrier, d, q);
            if dim_w != dim_f {
                report.dimension_mismatches.push((d, q, dim_w, dim_f));
            }
        }
    }
    report
}

/// Basis monomials `u ⊗ e^{qβ}⋯` of `F̃ ⊗ F₋₁` with `H(0) = 0`, lattice charge
/// `q` and `L(0) = degree`.
fn sector_zero_count(carrier: &Carrier, degree: i64, q: i64) -> usize {
    let cap = HalfInt::int(degree) + HalfInt::from_twice(q * q);
    carrier
        .basis(cap, Some(q))
        .into_iter()
        .filter_map(|f| {
            let room = (cap - f.weight()).twice();
            (room >= 0 && room % 2 == 0).then(|| partitions(room / 2).len())
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vac() -> WeylVector {
        WeylVector::basis(WeylMonomial::vacuum())
    }

    #[test]
    fn contraction() {
        assert!(weyl_apply(WeylGen::A, 0, &vac()).is_zero());
        let star = weyl_apply(WeylGen::AStar, 0, &vac());
        assert_eq!(star, WeylVector::basis(WeylMonomial::new(vec![], vec![0]).unwrap()));
        assert_eq!(weyl_apply(WeylGen::A, 0, &star), vac());
    }

    #[test]
    fn wakimoto_on_vacuum() {
        let chi = LaurentData::from_pairs([(0, Scalar::frac(1, 3)), (1, Scalar::one())]);
        assert_eq!(
            wakimoto_apply(Sl2Gen::H, 0, &chi, &vac()),
            vac().scaled(&Scalar::frac(-1, 3))
        );
        assert_eq!(
            wakimoto_apply(Sl2Gen::E, -1, &chi, &vac()),
            WeylVector::basis(WeylMonomial::new(vec![1], vec![]).unwrap())
        );
        // f(0)𝟙 = -χ₀ a*(0)𝟙 - χ₁ a*(-1)𝟙
        let want = WeylVector::term(WeylMonomial::new(vec![], vec![0]).unwrap(), Scalar::frac(-1, 3))
            + WeylVector::term(WeylMonomial::new(vec![], vec![1]).unwrap(), -Scalar::one());
        assert_eq!(wakimoto_apply(Sl2Gen::F, 0, &chi, &vac()), want);
    }

    #[test]
    fn realized_modes() {
        let one = tensor_vacuum();
        let a = realized_weyl_apply(WeylGen::A, -1, &one).unwrap();
        let f = FermionMonomial::from_twice(vec![3], vec![]).unwrap();
        assert_eq!(a, TensorVector::basis(TensorMonomial::new(f, LatticeMonomial::exp(1))));
        assert!(realized_weyl_apply(WeylGen::A, 0, &one).unwrap().is_zero());
        let star = realized_weyl_apply(WeylGen::AStar, -1, &one).unwrap();
        let back = realized_weyl_apply(WeylGen::A, 1, &star).unwrap();
        assert_eq!(back, one);
    }

    #[test]
    fn bases() {
        assert_eq!(weyl_basis(0, 2).len(), 3);
        // degree 1, charge window 0: a(-1)a*(0), plus the degree 0 vacuum
        assert_eq!(weyl_basis(1, 0).len(), 2);
    }
}
