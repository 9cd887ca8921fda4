//! Truncated cyclicity and irreducibility certificates.
//!
//! A module passes at bound `B` when every basis monomial of the slice lies
//! in the span generated from the vacuum (cyclic), and the vacuum lies in the
//! span generated from every basis monomial by weight-lowering modes
//! (cocyclic). Only images that stay inside the slice are kept, so every
//! vector in a computed span really lies in the generated submodule.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::affine::{AffineAction, CachedAction, Sl2Action, Sl2Gen, TensorMonomial};
use crate::amodule::{
    full_conditions, AGenerator, ARepresentation, ModuleSpec, TwistedModule, VacuumModule, VacuumMonomial,
};
use crate::error::{CoreError, Result};
use crate::exact::{HalfInt, LaurentData, LinComb, Scalar, Sign, SpanBasis};
use crate::fock::{FermionMonomial, FockVector};
use crate::lattice::{lattice_basis_exact, LatticeMonomial};
use crate::weyl::{weyl_basis, WakimotoAction, WeylMonomial};

/// A linear operator on sparse vectors.
pub type Operator<'a, K> = Box<dyn Fn(&LinComb<K>) -> LinComb<K> + 'a>;

/// The span of all words in `ops` applied to `start` whose intermediate
/// vectors have only admissible monomials. For operators that preserve the
/// admissible slice this is the least `ops`-stable span containing `start`.
///
/// Fails with [`CoreError::IterationCap`] once the span exceeds `cap`
/// dimensions.
pub fn span_closure<K: Ord + Clone>(
    start: &[LinComb<K>],
    ops: &[Operator<'_, K>],
    admissible: &dyn Fn(&K) -> bool,
    cap: usize,
) -> Result<SpanBasis<K>> {
    let mut span = SpanBasis::new();
    let mut queue = std::collections::VecDeque::new();
    for v in start {
        if span.insert(v) {
            queue.push_back(v.clone());
        }
    }
    while let Some(v) = queue.pop_front() {
        for op in ops {
            let w = op(&v);
            if w.is_zero() || !w.keys().all(admissible) {
                continue;
            }
            if !span.insert(&w) {
                continue;
            }
            if span.dimension() > cap {
                return Err(CoreError::IterationCap(cap));
            }
            // Queue the image itself: the admissibility filter is not linear,
            // so only genuine words applied to `start` are expanded further.
            queue.push_back(w);
        }
    }
    Ok(span)
}

/// Which half of the certificate a witness breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// The monomial is not in the span generated from the vacuum.
    OutsideCyclicSpan,
    /// The vacuum is not in the span generated from the monomial.
    VacuumUnreachable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness<M> {
    pub kind: WitnessKind,
    pub monomial: M,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateReport<M> {
    pub module: String,
    pub truncation: i64,
    pub slice_dimension: usize,
    pub cyclic_span_dimension: usize,
    pub cyclic_from_vacuum: bool,
    pub cocyclic_to_vacuum: bool,
    pub failures: Vec<Witness<M>>,
    /// The lowest failing monomial, if any.
    pub submodule_witness: Option<Witness<M>>,
}

impl<M> CertificateReport<M> {
    pub fn passed(&self) -> bool {
        self.cyclic_from_vacuum && self.cocyclic_to_vacuum && self.failures.is_empty()
    }
}

/// Everything a certificate needs: a slice basis, the vacuum, raising and
/// lowering operator families and the slice membership test.
pub struct CertificateSetup<'a, K: Ord> {
    pub describe: String,
    pub truncation: i64,
    pub basis: Vec<K>,
    pub vacuum: K,
    pub up: Vec<Operator<'a, K>>,
    pub down: Vec<Operator<'a, K>>,
    pub admissible: Box<dyn Fn(&K) -> bool + 'a>,
    /// Sort key used to pick the reported witness.
    pub grade: Box<dyn Fn(&K) -> HalfInt + 'a>,
}

impl<K: Ord + Clone> CertificateSetup<'_, K> {
    fn cap(&self) -> usize {
        self.basis.len() + 1
    }

    pub fn cyclic_span(&self) -> Result<SpanBasis<K>> {
        span_closure(
            &[LinComb::basis(self.vacuum.clone())],
            &self.up,
            &*self.admissible,
            self.cap(),
        )
    }

    pub fn reaches_vacuum(&self, from: &K) -> Result<bool> {
        let span = span_closure(
            &[LinComb::basis(from.clone())],
            &self.down,
            &*self.admissible,
            self.cap(),
        )?;
        Ok(span.contains(&LinComb::basis(self.vacuum.clone())))
    }

    pub fn run(&self) -> Result<CertificateReport<K>> {
        let span = self.cyclic_span()?;
        let mut failures = Vec::new();
        for k in &self.basis {
            if !span.contains(&LinComb::basis(k.clone())) {
                failures.push(Witness {
                    kind: WitnessKind::OutsideCyclicSpan,
                    monomial: k.clone(),
                });
            }
        }
        let cyclic = failures.is_empty();
        let mut cocyclic = true;
        for k in &self.basis {
            if !self.reaches_vacuum(k)? {
                cocyclic = false;
                failures.push(Witness {
                    kind: WitnessKind::VacuumUnreachable,
                    monomial: k.clone(),
                });
            }
        }
        let submodule_witness = failures
            .iter()
            .min_by(|a, b| {
                (
                    a.kind != WitnessKind::OutsideCyclicSpan,
                    (self.grade)(&a.monomial),
                    &a.monomial,
                )
                    .cmp(&(
                        b.kind != WitnessKind::OutsideCyclicSpan,
                        (self.grade)(&b.monomial),
                        &b.monomial,
                    ))
            })
            .cloned();
        Ok(CertificateReport {
            module: self.describe.clone(),
            truncation: self.truncation,
            slice_dimension: self.basis.len(),
            cyclic_span_dimension: span.dimension(),
            cyclic_from_vacuum: cyclic,
            cocyclic_to_vacuum: cocyclic,
            failures,
            submodule_witness,
        })
    }

    /// Recomputes the relevant span and confirms the witness still fails.
    pub fn replay(&self, w: &Witness<K>) -> Result<bool> {
        if !(self.admissible)(&w.monomial) {
            return Ok(false);
        }
        match w.kind {
            WitnessKind::OutsideCyclicSpan => Ok(!self.cyclic_span()?.contains(&LinComb::basis(w.monomial.clone()))),
            WitnessKind::VacuumUnreachable => Ok(!self.reaches_vacuum(&w.monomial)?),
        }
    }
}

fn half_odd_modes(bound: HalfInt) -> impl Iterator<Item = HalfInt> {
    let t = bound.twice();
    (-t..=t).filter(|x| x.rem_euclid(2) == 1).map(HalfInt::from_twice)
}

/// Certificate setup for a twisted Fock module at weight bound `weight_bound`.
///
/// Raising family: `G±(r)` with `|r| ≤ weight_bound + p + ½`. Lowering
/// family: `G^σ(i-½)` for `i` above the support of `χ^σ`, so that every term
/// is an annihilator.
pub fn fock_certificate_setup(spec: &ModuleSpec, weight_bound: i64) -> CertificateSetup<'static, FermionMonomial> {
    let module = std::rc::Rc::new(TwistedModule::new(spec));
    let p = spec.chi_support_max().unwrap_or(0).max(0);
    let bound = HalfInt::from_twice(2 * (weight_bound + p) + 1);
    let mut up: Vec<Operator<'static, FermionMonomial>> = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        for r in half_odd_modes(bound) {
            let m = module.clone();
            up.push(Box::new(move |v: &FockVector| m.apply_vec(AGenerator::g(sign, r), v)));
        }
    }
    let mut down: Vec<Operator<'static, FermionMonomial>> = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        let k = module.chi(sign).support_max().unwrap_or(0).max(0);
        for i in (k + 1)..=(weight_bound + k + 1) {
            let m = module.clone();
            let r = HalfInt::from_twice(2 * i - 1);
            down.push(Box::new(move |v: &FockVector| m.apply_vec(AGenerator::g(sign, r), v)));
        }
    }
    let carrier = spec.carrier();
    let cap = HalfInt::int(weight_bound);
    let basis = carrier.basis(cap, None);
    CertificateSetup {
        describe: spec.to_string(),
        truncation: weight_bound,
        basis,
        vacuum: FermionMonomial::vacuum(),
        up,
        down,
        admissible: Box::new(move |m: &FermionMonomial| m.weight() <= cap && carrier.contains(m)),
        grade: Box::new(|m: &FermionMonomial| m.weight()),
    }
}

pub fn irreducibility_certificate(spec: &ModuleSpec, weight_bound: i64) -> Result<CertificateReport<FermionMonomial>> {
    if weight_bound < 1 {
        return Err(CoreError::InvalidArgument("weight bound must be at least 1".into()));
    }
    fock_certificate_setup(spec, weight_bound).run()
}

/// Certificate setup for the Wakimoto module `W₋χ` on monomials of degree
/// `≤ degree_bound` and `|charge| ≤ max_charge`.
///
/// Raising family: `e(n)`, `h(n)`, `f(n)` with `|n| ≤ degree_bound + p + 1`.
/// Lowering family: `e(n)`, `n ≥ 0`, and `h(n)`, `f(n)`, `n ≥ 1`.
pub fn wakimoto_certificate_setup(
    chi: &LaurentData,
    degree_bound: i64,
    max_charge: i64,
) -> CertificateSetup<'static, WeylMonomial> {
    let action = std::rc::Rc::new(WakimotoAction::new(chi.clone()));
    let p = chi.support_max().unwrap_or(0).max(0);
    let top = degree_bound + p + 1;
    let mut up: Vec<Operator<'static, WeylMonomial>> = Vec::new();
    let mut down: Vec<Operator<'static, WeylMonomial>> = Vec::new();
    for x in Sl2Gen::ALL {
        for n in -top..=top {
            let a = action.clone();
            up.push(Box::new(move |v: &LinComb<WeylMonomial>| a.apply_vec(x, n, v)));
            let lowest = if x == Sl2Gen::E { 0 } else { 1 };
            if n >= lowest {
                let a = action.clone();
                down.push(Box::new(move |v: &LinComb<WeylMonomial>| a.apply_vec(x, n, v)));
            }
        }
    }
    CertificateSetup {
        describe: format!("W(-χ), χ = {chi}"),
        truncation: degree_bound,
        basis: weyl_basis(degree_bound, max_charge),
        vacuum: WeylMonomial::vacuum(),
        up,
        down,
        admissible: Box::new(move |m: &WeylMonomial| m.degree() <= degree_bound && m.charge().abs() <= max_charge),
        grade: Box::new(|m: &WeylMonomial| HalfInt::int(m.degree())),
    }
}

pub fn wakimoto_certificate(
    chi: &LaurentData,
    degree_bound: i64,
    max_charge: i64,
) -> Result<CertificateReport<WeylMonomial>> {
    wakimoto_certificate_setup(chi, degree_bound, max_charge).run()
}

/// Outcome of the generation check on the vacuum sector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationReport {
    pub degree_bound: i64,
    pub slice_dimension: usize,
    pub closure_dimension: usize,
    pub closure_in_slice: bool,
    /// Dimension of the closure under `e`, `f`, `h` alone.
    pub sl2_only_dimension: usize,
    /// A slice vector the `e, f, h` closure misses.
    pub strictness_witness: Option<String>,
    pub s_identity_holds: bool,
    /// `S(-2)𝟙⊗𝟙` minus the right side of the identity.
    pub s_identity_difference: String,
}

impl GenerationReport {
    pub fn passed(&self) -> bool {
        self.closure_in_slice
            && self.closure_dimension == self.slice_dimension
            && self.s_identity_holds
            && self.sl2_only_dimension < self.slice_dimension
            && self.strictness_witness.is_some()
    }
}

type VacKey = TensorMonomial<VacuumMonomial>;

/// A PBW word `G⁺(-a₁-½)⋯G⁻(-b₁-½)⋯S(-s₁)⋯T(-t₁)⋯`.
#[derive(Clone, Debug, Default)]
struct PbwWord {
    gplus: Vec<i64>,
    gminus: Vec<i64>,
    s: Vec<i64>,
    t: Vec<i64>,
}

impl PbwWord {
    fn charge(&self) -> i64 {
        self.gplus.len() as i64 - self.gminus.len() as i64
    }

    fn weight(&self) -> HalfInt {
        let g: i64 = self.gplus.iter().chain(&self.gminus).map(|a| 2 * a + 1).sum();
        let st: i64 = self.s.iter().chain(&self.t).sum();
        HalfInt::from_twice(g + 2 * st)
    }

    fn evaluate(&self) -> LinComb<VacuumMonomial> {
        let rep = VacuumModule;
        let mut v = LinComb::basis(rep.vacuum());
        for n in &self.t {
            v = rep.apply_vec(AGenerator::T(-n), &v);
        }
        for n in &self.s {
            v = rep.apply_vec(AGenerator::S(-n), &v);
        }
        for a in self.gminus.iter().rev() {
            v = rep.apply_vec(AGenerator::Gminus(HalfInt::from_twice(-2 * a - 1)), &v);
        }
        for a in self.gplus.iter().rev() {
            v = rep.apply_vec(AGenerator::Gplus(HalfInt::from_twice(-2 * a - 1)), &v);
        }
        v
    }
}

/// Strictly decreasing lists of non-negative integers `a` with
/// `Σ (2a+1) ≤ cap_twice`.
fn distinct_sets(cap_twice: i64) -> Vec<Vec<i64>> {
    fn rec(limit: i64, room: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        out.push(cur.clone());
        for a in 0..limit {
            if 2 * a < room {
                cur.push(a);
                rec(a, room - 2 * a - 1, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(cap_twice + 1, cap_twice, &mut Vec::new(), &mut out);
    out
}

/// Multisets (decreasing) of integers `≥ min` with sum at most `cap`.
fn multisets(cap: i64, min: i64) -> Vec<Vec<i64>> {
    fn rec(limit: i64, room: i64, min: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        out.push(cur.clone());
        for a in min..=limit.min(room) {
            cur.push(a);
            rec(a, room - a, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(cap, cap, min, &mut Vec::new(), &mut out);
    out
}

/// Spanning vectors of the vacuum-generated `𝒜`-module, grouped by
/// `(charge, weight)`, for all weights `≤ B + m²/2` with `|m| ≤ max_charge`.
fn vacuum_blocks(degree_bound: i64, max_charge: i64) -> BTreeMap<(i64, HalfInt), SpanBasis<VacuumMonomial>> {
    let cap_twice = 2 * degree_bound + max_charge * max_charge;
    let sets = distinct_sets(cap_twice);
    let mut blocks: BTreeMap<(i64, HalfInt), SpanBasis<VacuumMonomial>> = BTreeMap::new();
    for gp in &sets {
        for gm in &sets {
            let m = gp.len() as i64 - gm.len() as i64;
            if m.abs() > max_charge {
                continue;
            }
            let limit = HalfInt::from_twice(2 * degree_bound + m * m);
            let head = PbwWord {
                gplus: gp.clone(),
                gminus: gm.clone(),
                ..Default::default()
            };
            if head.weight() > limit {
                continue;
            }
            let room = (limit - head.weight()).twice().div_euclid(2);
            for s in multisets(room, 2) {
                let used: i64 = s.iter().sum();
                for t in multisets(room - used, 1) {
                    let word = PbwWord {
                        t,
                        s: s.clone(),
                        ..head.clone()
                    };
                    let v = word.evaluate();
                    if !v.is_zero() {
                        blocks.entry((word.charge(), word.weight())).or_default().insert(&v);
                    }
                }
            }
        }
    }
    blocks
}

/// Checks that `𝟙 ⊗ 𝟙` generates the whole `H(0) = 0` slice of
/// `𝒱 ⊗ F₋₁` with `L(0) ≤ degree_bound` under `e(n)`, `f(n)`, `h(n)` and `T(n)`,
/// `|n| ≤ degree_bound`; that `e`, `f`, `h` alone do not; and that
/// `S(-2)𝟙⊗𝟙 = ¼(e(-1)f(-1) + f(-1)e(-1) + ½h(-1)²)𝟙⊗𝟙 - ½T(-1)²𝟙⊗𝟙`.
///
/// `𝒱` is realized inside the universal module [`VacuumModule`], where the
/// central fields are free variables.
pub fn generation_check(degree_bound: i64) -> Result<GenerationReport> {
    let b = degree_bound;
    let max_charge = b + 1;
    let action = AffineAction::new(VacuumModule, 0);
    let cached = CachedAction::new(&action);

    let mut slice: SpanBasis<VacKey> = SpanBasis::new();
    for ((m, w), block) in vacuum_blocks(b, max_charge) {
        let room = (HalfInt::int(b) + HalfInt::from_twice(m * m) - w).twice();
        if room < 0 {
            continue;
        }
        for d in 0..=room.div_euclid(2) {
            for l in lattice_basis_exact(d, m) {
                for row in block.rows() {
                    let v: LinComb<VacKey> = row
                        .iter()
                        .map(|(u, c)| (TensorMonomial::new(u.clone(), l.clone()), c.clone()))
                        .collect();
                    slice.insert(&v);
                }
            }
        }
    }

    let vac = LinComb::basis(TensorMonomial::new(
        VacuumMonomial::default(),
        LatticeMonomial::vacuum(),
    ));
    let admissible = |t: &VacKey| action.l0(t) <= HalfInt::int(b) && t.l.charge().abs() <= max_charge;
    let mut ops: Vec<Operator<'_, VacKey>> = Vec::new();
    for x in Sl2Gen::ALL {
        for n in -b..=b {
            let c = &cached;
            ops.push(Box::new(move |v: &LinComb<VacKey>| c.apply_vec(x, n, v)));
        }
    }
    let cap = 4 * slice.dimension() + 64;
    let sl2_only = span_closure(std::slice::from_ref(&vac), &ops, &admissible, cap)?;
    for n in -b..=b {
        let c = &cached;
        ops.push(Box::new(move |v: &LinComb<VacKey>| {
            v.map_linear(|t| c.central(n, t).unwrap_or_default())
        }));
    }
    let closure = span_closure(std::slice::from_ref(&vac), &ops, &admissible, cap)?;
    let closure_in_slice = closure.rows().all(|r| slice.contains(r));

    let t = |n: i64, v: &LinComb<VacKey>| v.map_linear(|k| cached.central(n, k).unwrap_or_default());
    let t1 = t(-1, &vac);
    let strictness_witness = (!sl2_only.contains(&t1) && slice.contains(&t1)).then(|| format!("T(-1)𝟙⊗𝟙 = {t1}"));

    let s2: LinComb<VacKey> = vac.map_linear(|k| {
        VacuumModule
            .apply(AGenerator::S(-2), &k.f)
            .iter()
            .map(|(u, c)| (TensorMonomial::new(u.clone(), k.l.clone()), c.clone()))
            .collect()
    });
    let e = |v: &LinComb<VacKey>| cached.apply_vec(Sl2Gen::E, -1, v);
    let f = |v: &LinComb<VacKey>| cached.apply_vec(Sl2Gen::F, -1, v);
    let h = |v: &LinComb<VacKey>| cached.apply_vec(Sl2Gen::H, -1, v);
    let mut quad = e(&f(&vac)) + f(&e(&vac));
    quad.add_scaled(&Scalar::frac(1, 2), &h(&h(&vac)));
    let mut rhs = quad.scaled(&Scalar::frac(1, 4));
    rhs.add_scaled(&Scalar::frac(-1, 2), &t(-1, &t1));
    let diff = s2 - rhs;

    Ok(GenerationReport {
        degree_bound: b,
        slice_dimension: slice.dimension(),
        closure_dimension: closure.dimension(),
        closure_in_slice,
        sl2_only_dimension: sl2_only.dimension(),
        strictness_witness,
        s_identity_holds: diff.is_zero(),
        s_identity_difference: diff.to_string(),
    })
}

/// The constants appearing in the cyclicity argument for `F(λ/z, χ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofConstant {
    /// `G⁻(p-N-½)⋯G⁻(p-½)𝟙 = C Ψ⁻(-N-½)⋯Ψ⁻(-½)𝟙`.
    C { n: u32 },
    /// `G⁻(n_r+p+½)⋯G⁻(n_1+p+½) G⁺(k_s+½)⋯G⁺(k_1+½) v = C' 𝟙` for
    /// `v = Ψ⁺(-n_1-½)⋯Ψ⁺(-n_r-½) Ψ⁻(-k_1-½)⋯Ψ⁻(-k_s-½)𝟙`, both index lists
    /// strictly decreasing.
    CPrime {
        lambda: Scalar,
        plus: Vec<i64>,
        minus: Vec<i64>,
    },
}

impl fmt::Display for ProofConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofConstant::C { n } => write!(f, "C(N={n})"),
            ProofConstant::CPrime { lambda, plus, minus } => {
                write!(f, "C'(λ={lambda}, n={plus:?}, k={minus:?})")
            }
        }
    }
}

fn check_indices(v: &[i64]) -> Result<()> {
    if v.iter().any(|x| *x < 0) || v.windows(2).any(|w| w[0] <= w[1]) {
        return Err(CoreError::InvalidArgument(format!(
            "indices must be non-negative and strictly decreasing: {v:?}"
        )));
    }
    Ok(())
}

/// The closed form of the constant.
pub fn proof_constant(kind: &ProofConstant, chi: &LaurentData) -> Result<Scalar> {
    full_conditions(chi)?;
    let p = chi.pole_index();
    let chi_p = chi.coeff(p);
    match kind {
        ProofConstant::C { n } => Ok(if p >= 1 {
            chi_p.pow(n + 1)
        } else {
            (0..=*n as i64).fold(Scalar::one(), |acc, j| &acc * &(&chi_p + &Scalar::from_int(j)))
        }),
        ProofConstant::CPrime { lambda, plus, minus } => {
            check_indices(plus)?;
            check_indices(minus)?;
            if lambda.is_integer() {
                return Err(CoreError::ConditionViolation(format!("λ = {lambda} is an integer")));
            }
            let sign = if (plus.len() + minus.len()) % 2 == 1 { -1 } else { 1 };
            let mut acc = Scalar::from_int(sign);
            for k in minus {
                acc = &acc * &(lambda - &Scalar::from_int(k + 1));
            }
            let c2 = if p >= 1 {
                chi_p.pow(plus.len() as u32)
            } else {
                plus.iter()
                    .fold(Scalar::one(), |a, n| &a * &(&chi_p - &Scalar::from_int(n + 1)))
            };
            Ok(&acc * &c2)
        }
    }
}

/// The same constant read off the literal operator word on `F(λ/z, χ)`.
///
/// For `C` the coefficient of `Ψ⁻(-N-½)⋯Ψ⁻(-½)𝟙` is returned; for `C'` the
/// coefficient of `𝟙`. The closed form of `C'` fixes it only up to sign.
pub fn proof_constant_by_word(kind: &ProofConstant, chi: &LaurentData) -> Result<Scalar> {
    full_conditions(chi)?;
    let p = chi.pole_index();
    let g = |sign: Sign, twice: i64| AGenerator::g(sign, HalfInt::from_twice(twice));
    match kind {
        ProofConstant::C { n } => {
            let n = *n as i64;
            let module = TwistedModule::new(&ModuleSpec::Full {
                chi_plus: LaurentData::zero(),
                chi_minus: chi.clone(),
            });
            let mut v = FockVector::basis(FermionMonomial::vacuum());
            for j in 0..=n {
                v = module.apply_vec(g(Sign::Minus, 2 * (p - j) - 1), &v);
            }
            let target = FermionMonomial::from_twice(Vec::new(), (0..=n).rev().map(|j| 2 * j + 1).collect())?;
            Ok(v.coeff(&target))
        }
        ProofConstant::CPrime { lambda, plus, minus } => {
            check_indices(plus)?;
            check_indices(minus)?;
            let module = TwistedModule::new(&ModuleSpec::Full {
                chi_plus: LaurentData::simple_pole(lambda.clone()),
                chi_minus: chi.clone(),
            });
            let start = FermionMonomial::from_twice(
                plus.iter().map(|n| 2 * n + 1).collect(),
                minus.iter().map(|k| 2 * k + 1).collect(),
            )?;
            let mut v = FockVector::basis(start);
            for k in minus {
                v = module.apply_vec(g(Sign::Plus, 2 * k + 1), &v);
            }
            for n in plus {
                v = module.apply_vec(g(Sign::Minus, 2 * (n + p) + 1), &v);
            }
            Ok(v.coeff(&FermionMonomial::vacuum()))
        }
    }
}
