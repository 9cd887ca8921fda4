//! Affine `sl2` at level `-2` on `U ⊗ F₋₁`.
//!
//! For an `𝒜`-module `U` the modes
//!
//! ```text
//! e(n) = Σ_i G⁺(i-½) ⊗ e^β_{n-i-1},   f(n) = Σ_i G⁻(i-½) ⊗ e^{-β}_{n-i-1},
//! h(n) = -2β(n) + 2T(n)
//! ```
//!
//! satisfy the level `-2` relations. Odd operators on the lattice factor pass
//! the fermion factor with the sign `(-1)^{p(u)}`.
//!
//! `H(0) = J^f(0) + β(0)` splits `U ⊗ F₋₁` into sectors `ℒ_s`; `L(0)` is the sum
//! of the fermion weight and the Heisenberg degree minus `m²/2`.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::amodule::{AGenerator, ARepresentation, ModuleSpec, TwistedModule};
use crate::error::{CoreError, Result};
use crate::exact::{HalfInt, LinComb, Scalar, Sign};
use crate::fock::{Carrier, FermionMonomial};
use crate::lattice::{beta_apply_mono, expbeta_apply_mono, LatticeMonomial};
use crate::report::RelationReport;

/// A basis vector `u ⊗ l` of `U ⊗ F₋₁`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TensorMonomial<M = FermionMonomial> {
    pub f: M,
    pub l: LatticeMonomial,
}

pub type TensorVector<M = FermionMonomial> = LinComb<TensorMonomial<M>>;

impl<M> TensorMonomial<M> {
    pub fn new(f: M, l: LatticeMonomial) -> Self {
        TensorMonomial { f, l }
    }
}

impl TensorMonomial<FermionMonomial> {
    /// `H(0)` eigenvalue, `J^f(0) + β(0)`.
    pub fn h0(&self) -> i64 {
        self.f.charge() + self.l.beta_zero()
    }

    pub fn is_odd(&self) -> bool {
        self.f.is_odd() != self.l.is_odd()
    }
}

impl<M: fmt::Display> fmt::Display for TensorMonomial<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗{}", self.f, self.l)
    }
}

impl<M: fmt::Display> fmt::Debug for TensorMonomial<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `L(0)` eigenvalue on `F ⊗ F₋₁`.
pub fn l0_weight(t: &TensorMonomial) -> HalfInt {
    l0_from_parts(t.f.weight(), &t.l)
}

fn l0_from_parts(weight: HalfInt, l: &LatticeMonomial) -> HalfInt {
    weight + HalfInt::from_twice(2 * l.degree() - l.charge() * l.charge())
}

/// Splits a vector by `H(0)` eigenvalue.
pub fn h0_sector(v: &TensorVector) -> BTreeMap<i64, TensorVector> {
    v.split_by(|t| t.h0())
}

/// The component of `v` in `ℒ_s`.
pub fn ls_project(s: i64, v: &TensorVector) -> TensorVector {
    h0_sector(v).remove(&s).unwrap_or_default()
}

/// `e`, `h` or `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sl2Gen {
    E,
    H,
    F,
}

impl Sl2Gen {
    pub const ALL: [Sl2Gen; 3] = [Sl2Gen::E, Sl2Gen::H, Sl2Gen::F];
}

impl fmt::Display for Sl2Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Sl2Gen::E => "e",
            Sl2Gen::H => "h",
            Sl2Gen::F => "f",
        };
        write!(f, "{c}")
    }
}

/// A mode `x(n)` plus a scalar multiple of the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedMode {
    pub gen: Sl2Gen,
    pub mode: i64,
    pub shift: Scalar,
}

/// The spectral flow automorphism `π_s`:
/// `e(n) ↦ e(n-s)`, `f(n) ↦ f(n+s)`, `h(n) ↦ h(n) + 2s δ_{n,0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SpectralFlow(pub i64);

impl SpectralFlow {
    pub fn compose(self, other: SpectralFlow) -> SpectralFlow {
        SpectralFlow(self.0 + other.0)
    }

    pub fn twist(self, gen: Sl2Gen, mode: i64) -> TwistedMode {
        self.twist_mode(&TwistedMode {
            gen,
            mode,
            shift: Scalar::zero(),
        })
    }

    /// Applies `π_s` to an already twisted mode.
    pub fn twist_mode(self, t: &TwistedMode) -> TwistedMode {
        let s = self.0;
        match t.gen {
            Sl2Gen::E => TwistedMode {
                gen: Sl2Gen::E,
                mode: t.mode - s,
                shift: t.shift.clone(),
            },
            Sl2Gen::F => TwistedMode {
                gen: Sl2Gen::F,
                mode: t.mode + s,
                shift: t.shift.clone(),
            },
            Sl2Gen::H => TwistedMode {
                gen: Sl2Gen::H,
                mode: t.mode,
                shift: if t.mode == 0 {
                    &t.shift + &Scalar::from_int(2 * s)
                } else {
                    t.shift.clone()
                },
            },
        }
    }
}

/// `π_s ∘ π_t`.
pub fn flow_compose(s: i64, t: i64) -> SpectralFlow {
    SpectralFlow(s).compose(SpectralFlow(t))
}

/// An `𝒜`-module together with a spectral-flow twist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineModuleSpec {
    pub base: ModuleSpec,
    pub flow: i64,
}

impl AffineModuleSpec {
    pub fn new(base: ModuleSpec) -> Self {
        AffineModuleSpec { base, flow: 0 }
    }

    pub fn with_flow(base: ModuleSpec, flow: i64) -> Self {
        AffineModuleSpec { base, flow }
    }
}

/// Anything carrying modes `e(n)`, `h(n)`, `f(n)`.
pub trait Sl2Action {
    type Key: Ord + Clone + Hash + fmt::Display;

    fn apply(&self, x: Sl2Gen, n: i64, k: &Self::Key) -> LinComb<Self::Key>;

    fn apply_vec(&self, x: Sl2Gen, n: i64, v: &LinComb<Self::Key>) -> LinComb<Self::Key> {
        v.map_linear(|k| self.apply(x, n, k))
    }

    /// The central field `T(n)`, when the space has one.
    fn central(&self, _n: i64, _k: &Self::Key) -> Option<LinComb<Self::Key>> {
        None
    }

    /// `H(0)` eigenvalue of a basis key, when the space has that grading.
    fn sector(&self, _k: &Self::Key) -> Option<i64> {
        None
    }
}

type Memo<K> = RefCell<HashMap<(Sl2Gen, i64, K), LinComb<K>>>;

/// Memoizes `apply` on single keys; images recur across relation checks.
pub struct CachedAction<'a, A: Sl2Action> {
    inner: &'a A,
    memo: Memo<A::Key>,
}

impl<'a, A: Sl2Action> CachedAction<'a, A> {
    pub fn new(inner: &'a A) -> Self {
        CachedAction {
            inner,
            memo: RefCell::new(HashMap::new()),
        }
    }
}

impl<A: Sl2Action> Sl2Action for CachedAction<'_, A> {
    type Key = A::Key;

    fn apply(&self, x: Sl2Gen, n: i64, k: &Self::Key) -> LinComb<Self::Key> {
        let key = (x, n, k.clone());
        if let Some(hit) = self.memo.borrow().get(&key) {
            return hit.clone();
        }
        let img = self.inner.apply(x, n, k);
        self.memo.borrow_mut().insert(key, img.clone());
        img
    }

    fn central(&self, n: i64, k: &Self::Key) -> Option<LinComb<Self::Key>> {
        self.inner.central(n, k)
    }

    fn sector(&self, k: &Self::Key) -> Option<i64> {
        self.inner.sector(k)
    }
}

/// The `sl2` action on `U ⊗ F₋₁` for an `𝒜`-representation `U`.
#[derive(Clone, Debug)]
pub struct AffineAction<R> {
    rep: R,
    flow: SpectralFlow,
}

impl<R: ARepresentation> AffineAction<R> {
    pub fn new(rep: R, flow: i64) -> Self {
        AffineAction {
            rep,
            flow: SpectralFlow(flow),
        }
    }

    pub fn rep(&self) -> &R {
        &self.rep
    }

    pub fn flow(&self) -> i64 {
        self.flow.0
    }

    pub fn h0(&self, t: &TensorMonomial<R::Mono>) -> i64 {
        self.rep.fermion(&t.f).charge() + t.l.beta_zero()
    }

    pub fn l0(&self, t: &TensorMonomial<R::Mono>) -> HalfInt {
        l0_from_parts(self.rep.weight(&t.f), &t.l)
    }

    fn odd_part(&self, sign: Sign, n: i64, t: &TensorMonomial<R::Mono>) -> TensorVector<R::Mono> {
        let mut out = LinComb::zero();
        let koszul = if self.rep.fermion(&t.f).is_odd() {
            -Scalar::one()
        } else {
            Scalar::one()
        };
        let lo = n - t.l.degree() - sign.value() * t.l.charge();
        let hi = self.rep.g_index_max(&t.f);
        for i in lo..=hi {
            let lat = expbeta_apply_mono(sign, n - i - 1, &t.l);
            if lat.is_zero() {
                continue;
            }
            let g = self
                .rep
                .apply(AGenerator::g(sign, HalfInt::from_twice(2 * i - 1)), &t.f);
            for (u, cu) in g.iter() {
                let cu = &koszul * cu;
                for (l, cl) in lat.iter() {
                    out.add_term(TensorMonomial::new(u.clone(), l.clone()), &cu * cl);
                }
            }
        }
        out
    }

    /// The untwisted action.
    pub fn raw_apply(&self, x: Sl2Gen, n: i64, t: &TensorMonomial<R::Mono>) -> TensorVector<R::Mono> {
        match x {
            Sl2Gen::E => self.odd_part(Sign::Plus, n, t),
            Sl2Gen::F => self.odd_part(Sign::Minus, n, t),
            Sl2Gen::H => {
                let mut out = LinComb::zero();
                for (l, c) in beta_apply_mono(n, &t.l).iter() {
                    out.add_term(TensorMonomial::new(t.f.clone(), l.clone()), &Scalar::from_int(-2) * c);
                }
                for (u, c) in self.rep.apply(AGenerator::T(n), &t.f).iter() {
                    out.add_term(TensorMonomial::new(u.clone(), t.l.clone()), &Scalar::from_int(2) * c);
                }
                out
            }
        }
    }
}

impl<R: ARepresentation> Sl2Action for AffineAction<R> {
    type Key = TensorMonomial<R::Mono>;

    fn apply(&self, x: Sl2Gen, n: i64, k: &Self::Key) -> LinComb<Self::Key> {
        let tw = self.flow.twist(x, n);
        let mut out = self.raw_apply(tw.gen, tw.mode, k);
        out.add_term(k.clone(), tw.shift);
        out
    }

    fn central(&self, n: i64, k: &Self::Key) -> Option<LinComb<Self::Key>> {
        let mut out = LinComb::zero();
        for (u, c) in self.rep.apply(AGenerator::T(n), &k.f).iter() {
            out.add_term(TensorMonomial::new(u.clone(), k.l.clone()), c.clone());
        }
        Some(out)
    }

    fn sector(&self, k: &Self::Key) -> Option<i64> {
        Some(self.h0(k))
    }
}

/// The action for a module spec on `F ⊗ F₋₁`.
pub fn affine_action(spec: &AffineModuleSpec) -> AffineAction<TwistedModule> {
    AffineAction::new(TwistedModule::new(&spec.base), spec.flow)
}

fn ensure_tensor_carrier(module: &TwistedModule, v: &TensorVector) -> Result<()> {
    match v.keys().find(|t| !module.in_carrier(&t.f)) {
        Some(t) => Err(CoreError::CarrierViolation(format!(
            "{t} is not in the carrier of {}",
            module.describe()
        ))),
        None => Ok(()),
    }
}

/// `x(n) v` on `U ⊗ F₋₁` for the given module and flow.
pub fn sl2_apply(x: Sl2Gen, n: i64, spec: &AffineModuleSpec, v: &TensorVector) -> Result<TensorVector> {
    let action = affine_action(spec);
    ensure_tensor_carrier(action.rep(), v)?;
    Ok(action.apply_vec(x, n, v))
}

/// The displayed closed forms of the action for three module families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedFamily {
    /// `F(0, -n/z)` on monomials without `Ψ⁺(-½)` and `Ψ⁻(-n-½)`:
    /// `e(m) = -Σ iΨ⁺(i-½)⊗e^β_{m-i-1}`, `f(m) = -Σ (i+n)Ψ⁻(i-½)⊗e^{-β}_{m-i-1}`,
    /// `h(m) = -2β(m) + nδ_{m,0}`.
    Bar { n: u32 },
    /// `F̃` twisted by `-λ/z`: as above with `n` replaced by `λ`.
    Tilde { lambda: Scalar },
    /// `F(λ/z, μ/z)`: `e(m) = Σ (λ-i)Ψ⁺(i-½)⊗e^β_{m-i-1}`,
    /// `f(m) = Σ (μ-i)Ψ⁻(i-½)⊗e^{-β}_{m-i-1}`, `h(m) = -2β(m) + (λ-μ)δ_{m,0}`.
    Full { lambda: Scalar, mu: Scalar },
}

impl ClosedFamily {
    pub fn carrier(&self) -> Carrier {
        match self {
            ClosedFamily::Bar { n } => Carrier::excluding(Some(0), Some(*n)),
            ClosedFamily::Tilde { .. } => Carrier::excluding(Some(0), None),
            ClosedFamily::Full { .. } => Carrier::full(),
        }
    }

    /// The module spec whose general action the closed form specializes.
    pub fn base_spec(&self) -> ModuleSpec {
        match self {
            ClosedFamily::Bar { n } => ModuleSpec::Bar { m: 0, n: *n },
            ClosedFamily::Tilde { lambda } => ModuleSpec::Tilde {
                chi: crate::exact::LaurentData::simple_pole(-lambda.clone()),
            },
            ClosedFamily::Full { lambda, mu } => ModuleSpec::full_simple(lambda.clone(), mu.clone()),
        }
    }

    fn coefficient(&self, sign: Sign, i: i64) -> Scalar {
        let i_s = Scalar::from_int(i);
        match (self, sign) {
            (ClosedFamily::Bar { .. }, Sign::Plus) | (ClosedFamily::Tilde { .. }, Sign::Plus) => -i_s,
            (ClosedFamily::Bar { n }, Sign::Minus) => -(&i_s + &Scalar::from_int(*n as i64)),
            (ClosedFamily::Tilde { lambda }, Sign::Minus) => -(&i_s + lambda),
            (ClosedFamily::Full { lambda, .. }, Sign::Plus) => lambda - &i_s,
            (ClosedFamily::Full { mu, .. }, Sign::Minus) => mu - &i_s,
        }
    }

    fn h_constant(&self) -> Scalar {
        match self {
            ClosedFamily::Bar { n } => Scalar::from_int(*n as i64),
            ClosedFamily::Tilde { lambda } => lambda.clone(),
            ClosedFamily::Full { lambda, mu } => lambda - mu,
        }
    }
}

/// Evaluates the closed-form action of a family directly from the Clifford
/// and lattice modes.
pub fn sl2_apply_closed(family: &ClosedFamily, x: Sl2Gen, m: i64, v: &TensorVector) -> Result<TensorVector> {
    let carrier = family.carrier();
    if let Some(t) = v.keys().find(|t| !carrier.contains(&t.f)) {
        return Err(CoreError::FamilyMismatch(format!(
            "{t} lies outside the carrier of {family:?}"
        )));
    }
    Ok(v.map_linear(|t| match x {
        Sl2Gen::H => {
            let mut out: TensorVector = beta_apply_mono(m, &t.l)
                .iter()
                .map(|(l, c)| (TensorMonomial::new(t.f.clone(), l.clone()), &Scalar::from_int(-2) * c))
                .collect();
            if m == 0 {
                out.add_term(t.clone(), family.h_constant());
            }
            out
        }
        Sl2Gen::E | Sl2Gen::F => {
            let sign = if x == Sl2Gen::E { Sign::Plus } else { Sign::Minus };
            let koszul = if t.f.is_odd() { -Scalar::one() } else { Scalar::one() };
            let lo = m - t.l.degree() - sign.value() * t.l.charge();
            let hi = (t.f.max_mode_twice() + 1) / 2;
            let mut out = TensorVector::zero();
            for i in lo..=hi {
                let Some((neg, f)) = t.f.apply_psi(sign, HalfInt::from_twice(2 * i - 1)) else {
                    continue;
                };
                let mut c = &family.coefficient(sign, i) * &koszul;
                if neg {
                    c = -c;
                }
                for (l, cl) in expbeta_apply_mono(sign, m - i - 1, &t.l).iter() {
                    out.add_term(TensorMonomial::new(f.clone(), l.clone()), &c * cl);
                }
            }
            out
        }
    }))
}

/// `w^{(s)}_j`: `Ψ⁺(-j+½)⋯Ψ⁺(-½)𝟙 ⊗ e^{(j-s)β}` for `j ≥ 0` and
/// `Ψ⁻(j+½)⋯Ψ⁻(-½)𝟙 ⊗ e^{(j-s)β}` for `j < 0`, times `(-1)^{sj}`.
///
/// With the Koszul sign on the fermion factor, the bare products satisfy
/// `e(-s)w_j = (-1)^s(λ+j)w_{j+1}` and the same for `f`; the extra sign
/// makes the ladder identities hold without it.
pub fn top_level_vector(s: i64, j: i64) -> TensorVector {
    top_level_product(s, j).scaled(&if (s * j).rem_euclid(2) == 1 {
        -Scalar::one()
    } else {
        Scalar::one()
    })
}

/// The bare product `Ψ(..)⋯Ψ(-½)𝟙 ⊗ e^{(j-s)β}` without the sign of
/// [`top_level_vector`].
pub fn top_level_product(s: i64, j: i64) -> TensorVector {
    let modes: Vec<i64> = (0..j.abs()).map(|k| 2 * k + 1).collect();
    let f = if j >= 0 {
        FermionMonomial::from_twice(modes, Vec::new())
    } else {
        FermionMonomial::from_twice(Vec::new(), modes)
    }
    .expect("distinct odd modes");
    TensorVector::basis(TensorMonomial::new(f, LatticeMonomial::exp(j - s)))
}

/// Which basis vectors of `U ⊗ F₋₁` to enumerate: given sectors, lattice
/// charges `|m| ≤ max_lattice_charge`, and `L(0) ≤ max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorWindow {
    pub sectors: Vec<i64>,
    pub max_lattice_charge: i64,
    pub max_degree: HalfInt,
}

/// Basis of the window inside `carrier ⊗ F₋₁`, in canonical order.
pub fn tensor_basis(carrier: &Carrier, window: &TensorWindow) -> Vec<TensorMonomial> {
    let mut out = Vec::new();
    for &s in &window.sectors {
        for m in -window.max_lattice_charge..=window.max_lattice_charge {
            let shift = HalfInt::from_twice(m * m);
            let cap = window.max_degree + shift;
            for f in carrier.basis(cap, Some(m + s)) {
                let room = (cap - f.weight()).twice();
                if room < 0 {
                    continue;
                }
                for l in crate::lattice::lattice_basis(room.div_euclid(2), m) {
                    out.push(TensorMonomial::new(f.clone(), l));
                }
            }
        }
    }
    out.sort();
    out
}

/// Checks the level `-2` relations of affine `sl2` for all modes
/// `|m|, |n| ≤ mode_bound` on the given basis keys:
/// `[h(m),h(n)] = -4mδ`, `[h(m),e(n)] = 2e(m+n)`, `[h(m),f(n)] = -2f(m+n)`,
/// `[e(m),f(n)] = h(m+n) - 2mδ`, `[e,e] = [f,f] = 0`, sector preservation,
/// and centrality of `T(n)` when present.
pub fn sl2_relation_check_on<A: Sl2Action>(action: &A, basis: &[A::Key], mode_bound: i64) -> RelationReport {
    let modes: Vec<i64> = (-mode_bound..=mode_bound).collect();
    let mut report = RelationReport::default();
    let cached = CachedAction::new(action);
    let apply_vec = |x: Sl2Gen, n: i64, v: &LinComb<A::Key>| cached.apply_vec(x, n, v);
    for k in basis {
        let v = LinComb::basis(k.clone());
        let mut first: BTreeMap<(Sl2Gen, i64), LinComb<A::Key>> = BTreeMap::new();
        for x in Sl2Gen::ALL {
            for &n in &modes {
                first.insert((x, n), apply_vec(x, n, &v));
            }
        }
        let two = |x: Sl2Gen, m: i64, y: Sl2Gen, n: i64| -> LinComb<A::Key> { apply_vec(x, m, &first[&(y, n)]) };
        for (i, &m) in modes.iter().enumerate() {
            for &n in &modes[i..] {
                for (x, y) in [(Sl2Gen::H, Sl2Gen::H), (Sl2Gen::E, Sl2Gen::E), (Sl2Gen::F, Sl2Gen::F)] {
                    let lhs = two(x, m, y, n) - two(y, n, x, m);
                    let want = if x == Sl2Gen::H && m + n == 0 {
                        v.scaled(&Scalar::from_int(-4 * m))
                    } else {
                        LinComb::zero()
                    };
                    let d = lhs - want;
                    let zero = d.is_zero();
                    report.record(|| format!("[{x}({m}), {y}({n})]"), || k.to_string(), &d, zero);
                }
            }
            for &n in &modes {
                for (y, c) in [(Sl2Gen::E, 2), (Sl2Gen::F, -2)] {
                    let lhs = two(Sl2Gen::H, m, y, n) - two(y, n, Sl2Gen::H, m);
                    let rhs = apply_vec(y, m + n, &v).scaled(&Scalar::from_int(c));
                    let d = lhs - rhs;
                    let zero = d.is_zero();
                    report.record(|| format!("[h({m}), {y}({n})]"), || k.to_string(), &d, zero);
                }
                let lhs = two(Sl2Gen::E, m, Sl2Gen::F, n) - two(Sl2Gen::F, n, Sl2Gen::E, m);
                let mut rhs = apply_vec(Sl2Gen::H, m + n, &v);
                if m + n == 0 {
                    rhs.add_scaled(&Scalar::from_int(-2 * m), &v);
                }
                let d = lhs - rhs;
                let zero = d.is_zero();
                report.record(|| format!("[e({m}), f({n})]"), || k.to_string(), &d, zero);
            }
        }
        if let Some(s0) = action.sector(k) {
            for ((x, n), img) in &first {
                let bad: LinComb<A::Key> = img
                    .iter()
                    .filter(|(t, _)| action.sector(t) != Some(s0))
                    .map(|(t, c)| (t.clone(), c.clone()))
                    .collect();
                let zero = bad.is_zero();
                report.record(|| format!("[H(0), {x}({n})]"), || k.to_string(), &bad, zero);
            }
        }
        for &c in &modes {
            let Some(tv) = action.central(c, k) else {
                break;
            };
            for x in Sl2Gen::ALL {
                for &n in &modes {
                    let xt = apply_vec(x, n, &tv);
                    let tx = first[&(x, n)].map_linear(|t| action.central(c, t).unwrap_or_default());
                    let d = xt - tx;
                    let zero = d.is_zero();
                    report.record(|| format!("[T({c}), {x}({n})]"), || k.to_string(), &d, zero);
                }
            }
        }
    }
    report
}

/// Runs the relation suite on `carrier ⊗ F₋₁` restricted to a window.
pub fn sl2_relation_check(spec: &AffineModuleSpec, mode_bound: i64, window: &TensorWindow) -> RelationReport {
    let action = affine_action(spec);
    let basis = tensor_basis(&action.rep().carrier(), window);
    sl2_relation_check_on(&action, &basis, mode_bound)
}

/// Outcome of a highest-weight test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HwReport {
    pub found: bool,
    /// `x` with `h(0) v = (x - 2s) v`, when `v` is an `h(0)` eigenvector.
    pub x: Option<Scalar>,
    pub s: i64,
    pub label: Option<String>,
    /// An isomorphic untwisted label, when one is known.
    pub equivalent: Option<String>,
    pub failures: Vec<String>,
}

fn signed(x: &Scalar) -> String {
    if x.is_negative() {
        x.to_string()
    } else {
        format!("+{x}")
    }
}

/// `L((-2-x)Λ0 + xΛ1)`, wrapped in `π_{-s}` when `s ≠ 0`.
pub fn hw_label(x: &Scalar, s: i64) -> String {
    let a = &Scalar::from_int(-2) - x;
    let inner = format!("L({a}Λ0{}Λ1)", signed(x));
    if s == 0 {
        inner
    } else {
        format!("π_{{{}}}({inner})", -s)
    }
}

/// Tests whether `v` satisfies `e(n-s)v = 0`, `f(n+s+1)v = 0` for
/// `0 ≤ n ≤ depth` and `h(n)v = δ_{n,0}(x - 2s)v`; on success reports `x`
/// and the module `π_{-s}(L((-2-x)Λ0 + xΛ1))` generated by `v`.
pub fn hw_identify_with<R: ARepresentation<Mono = FermionMonomial>>(
    action: &AffineAction<R>,
    v: &TensorVector,
    s: i64,
    depth: i64,
) -> Result<HwReport> {
    if v.is_zero() {
        return Err(CoreError::ZeroVector);
    }
    if v.split_by(|t| action.h0(t)).len() > 1 {
        return Err(CoreError::NonHomogeneous);
    }
    let mut failures = Vec::new();
    let h0v = action.apply_vec(Sl2Gen::H, 0, v);
    let eigen = h0v.ratio_to(v);
    if eigen.is_none() {
        failures.push("h(0) v is not proportional to v".to_string());
    }
    for n in 0..=depth {
        if !action.apply_vec(Sl2Gen::E, n - s, v).is_zero() {
            failures.push(format!("e({}) v ≠ 0", n - s));
        }
        if !action.apply_vec(Sl2Gen::F, n + s + 1, v).is_zero() {
            failures.push(format!("f({}) v ≠ 0", n + s + 1));
        }
        if n > 0 && !action.apply_vec(Sl2Gen::H, n, v).is_zero() {
            failures.push(format!("h({n}) v ≠ 0"));
        }
    }
    let x = eigen.map(|c| &c + &Scalar::from_int(2 * s));
    let found = failures.is_empty();
    let (label, equivalent) = match (&x, found) {
        (Some(x), true) => {
            let equivalent = (s == 1).then(|| {
                let b = &Scalar::from_int(-2) - x;
                format!("L({x}Λ0{}Λ1)", signed(&b))
            });
            (Some(hw_label(x, s)), equivalent)
        }
        _ => (None, None),
    };
    Ok(HwReport {
        found,
        x,
        s,
        label,
        equivalent,
        failures,
    })
}

pub fn hw_identify(spec: &AffineModuleSpec, v: &TensorVector, s: i64, depth: i64) -> Result<HwReport> {
    let action = affine_action(spec);
    ensure_tensor_carrier(action.rep(), v)?;
    hw_identify_with(&action, v, s, depth)
}
