//! The Lie superalgebra `𝒜` and its twisted Fock modules.
//!
//! `𝒜` has odd generators `G±(r)`, `r ∈ ℤ + ½`, central even generators
//! `S(n)`, `T(n)`, and
//!
//! ```text
//! {G⁺(r), G⁻(s)} = 2S(r+s) + (r-s)T(r+s) - (r² - ¼)δ_{r+s,0},   {G±, G±} = 0.
//! ```
//!
//! On the twisted module with data `χ±(z) = Σ χ±_k z^{-k-1}` the odd modes are
//! `G±(i-½) = -i Ψ±(i-½) + Σ_k χ±_k Ψ±(i-k-½)` and the central elements act by
//! the scalars read off `T(z) = (χ⁺ - χ⁻)/2` and
//! `S(z) = (2χ⁺χ⁻ + ∂χ⁺ + ∂χ⁻)/4`.
//!
//! [`VacuumModule`] is the universal version where `χ±` are replaced by free
//! commuting variables `γ±(k)`, `k < 0`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{CoreError, Result};
use crate::exact::{HalfInt, LaurentData, LinComb, Scalar, Sign};
use crate::fock::{Carrier, FermionMonomial, FockVector, SubspaceTag};
use crate::report::RelationReport;

/// Which twisted module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleSpec {
    /// `F(χ⁺, χ⁻)` on all of `F`.
    Full {
        chi_plus: LaurentData,
        chi_minus: LaurentData,
    },
    /// `F̃_χ`, the action of `F(0, χ)` on `F̃`.
    Tilde { chi: LaurentData },
    /// `F(-m/z, -n/z)` on the monomials without `Ψ⁺(-m-½)` and `Ψ⁻(-n-½)`.
    Bar { m: u32, n: u32 },
}

impl ModuleSpec {
    /// `F(λ/z, μ/z)`.
    pub fn full_simple(lambda: Scalar, mu: Scalar) -> Self {
        ModuleSpec::Full {
            chi_plus: LaurentData::simple_pole(lambda),
            chi_minus: LaurentData::simple_pole(mu),
        }
    }

    /// The twist data `(χ⁺, χ⁻)` actually acting.
    pub fn effective_chi(&self) -> (LaurentData, LaurentData) {
        match self {
            ModuleSpec::Full { chi_plus, chi_minus } => (chi_plus.clone(), chi_minus.clone()),
            ModuleSpec::Tilde { chi } => (LaurentData::zero(), chi.clone()),
            ModuleSpec::Bar { m, n } => (
                LaurentData::simple_pole(Scalar::from_int(-(*m as i64))),
                LaurentData::simple_pole(Scalar::from_int(-(*n as i64))),
            ),
        }
    }

    pub fn tag(&self) -> SubspaceTag {
        match self {
            ModuleSpec::Full { .. } => SubspaceTag::F,
            ModuleSpec::Tilde { .. } => SubspaceTag::Tilde,
            ModuleSpec::Bar { .. } => SubspaceTag::Bar,
        }
    }

    /// The invariant subspace the module lives on.
    pub fn carrier(&self) -> Carrier {
        match self {
            ModuleSpec::Full { .. } => Carrier::full(),
            ModuleSpec::Tilde { .. } => Carrier::from_tag(SubspaceTag::Tilde),
            ModuleSpec::Bar { m, n } => Carrier::excluding(Some(*m), Some(*n)),
        }
    }

    /// Largest index in the support of either twist, if any.
    pub fn chi_support_max(&self) -> Option<i64> {
        let (p, m) = self.effective_chi();
        match (p.support_max(), m.support_max()) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSpec::Full { chi_plus, chi_minus } => write!(f, "Full({chi_plus}; {chi_minus})"),
            ModuleSpec::Tilde { chi } => write!(f, "Tilde({chi})"),
            ModuleSpec::Bar { m, n } => write!(f, "Bar({m},{n})"),
        }
    }
}

/// `χ_p ≠ 0` with `p = max(0, max support)`, and `χ₀ ∉ ℤ` when `p = 0`.
pub fn full_conditions(chi: &LaurentData) -> Result<()> {
    let p = chi.pole_index();
    if chi.coeff(p).is_zero() {
        return Err(CoreError::ConditionViolation(format!(
            "leading coefficient χ_{p} vanishes"
        )));
    }
    if p == 0 && chi.coeff(0).is_integer() {
        return Err(CoreError::ConditionViolation(format!(
            "χ_0 = {} is an integer",
            chi.coeff(0)
        )));
    }
    Ok(())
}

/// `χ_p ≠ 0`, and `χ₀ ∈ {1} ∪ (ℚ ∖ ℤ)` when `p = 0`.
pub fn tilde_conditions(chi: &LaurentData) -> Result<()> {
    let p = chi.pole_index();
    if chi.coeff(p).is_zero() {
        return Err(CoreError::ConditionViolation(format!(
            "leading coefficient χ_{p} vanishes"
        )));
    }
    let c0 = chi.coeff(0);
    if p == 0 && c0.is_integer() && c0 != Scalar::one() {
        return Err(CoreError::ConditionViolation(format!(
            "χ_0 = {c0} is an integer other than 1"
        )));
    }
    Ok(())
}

/// A generator of `𝒜`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum AGenerator {
    Gplus(HalfInt),
    Gminus(HalfInt),
    S(i64),
    T(i64),
}

impl AGenerator {
    pub fn g(sign: Sign, r: HalfInt) -> Self {
        match sign {
            Sign::Plus => AGenerator::Gplus(r),
            Sign::Minus => AGenerator::Gminus(r),
        }
    }

    pub fn is_odd(&self) -> bool {
        matches!(self, AGenerator::Gplus(_) | AGenerator::Gminus(_))
    }

    /// Change of weight under the generator.
    pub fn weight_shift(&self) -> HalfInt {
        match self {
            AGenerator::Gplus(r) | AGenerator::Gminus(r) => -*r,
            AGenerator::S(n) => HalfInt::int(-n - 1),
            AGenerator::T(n) => HalfInt::int(-n),
        }
    }
}

impl fmt::Display for AGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AGenerator::Gplus(r) => write!(f, "G+({r})"),
            AGenerator::Gminus(r) => write!(f, "G-({r})"),
            AGenerator::S(n) => write!(f, "S({n})"),
            AGenerator::T(n) => write!(f, "T({n})"),
        }
    }
}

/// The series of the central fields; `S(n)` is the coefficient at index
/// `n + 1` of `s_series` and `T(n)` the coefficient at index `n` of
/// `t_series`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarFields {
    pub s_series: LaurentData,
    pub t_series: LaurentData,
}

impl ScalarFields {
    pub fn s(&self, n: i64) -> Scalar {
        self.s_series.coeff(n + 1)
    }

    pub fn t(&self, n: i64) -> Scalar {
        self.t_series.coeff(n)
    }
}

pub fn scalar_fields(spec: &ModuleSpec) -> ScalarFields {
    let (p, m) = spec.effective_chi();
    let t_series = p.add(&m.scale(&-Scalar::one())).scale(&Scalar::frac(1, 2));
    let s_series = p
        .mul(&m)
        .scale(&Scalar::from_int(2))
        .add(&p.derivative())
        .add(&m.derivative())
        .scale(&Scalar::frac(1, 4));
    ScalarFields { s_series, t_series }
}

/// A representation of `𝒜` on a space with a monomial basis.
pub trait ARepresentation {
    type Mono: Ord + Clone + std::hash::Hash + fmt::Debug + fmt::Display;

    fn vacuum(&self) -> Self::Mono;

    /// The fermionic factor; it carries the parity and the charge.
    fn fermion<'a>(&self, m: &'a Self::Mono) -> &'a FermionMonomial;

    /// Weight of the monomial.
    fn weight(&self, m: &Self::Mono) -> HalfInt;

    fn in_carrier(&self, m: &Self::Mono) -> bool;

    fn apply(&self, gen: AGenerator, m: &Self::Mono) -> LinComb<Self::Mono>;

    /// An integer `I` with `G±(i-½) m = 0` for all `i > I`.
    fn g_index_max(&self, m: &Self::Mono) -> i64;

    fn describe(&self) -> String;

    fn apply_vec(&self, gen: AGenerator, v: &LinComb<Self::Mono>) -> LinComb<Self::Mono> {
        v.map_linear(|m| self.apply(gen, m))
    }
}

/// Applies `Σ_r c_r Ψ^sign(r)` to a fermion monomial.
fn psi_sum(sign: Sign, modes: &BTreeMap<i64, Scalar>, f: &FermionMonomial) -> FockVector {
    let mut out = FockVector::zero();
    for (twice, c) in modes {
        if let Some((neg, m)) = f.apply_psi(sign, HalfInt::from_twice(*twice)) {
            out.add_term(m, if neg { -c.clone() } else { c.clone() });
        }
    }
    out
}

/// The twisted module given by a [`ModuleSpec`].
#[derive(Clone, Debug)]
pub struct TwistedModule {
    spec: ModuleSpec,
    chi_plus: LaurentData,
    chi_minus: LaurentData,
    carrier: Carrier,
    fields: ScalarFields,
    kmax: i64,
}

impl TwistedModule {
    pub fn new(spec: &ModuleSpec) -> Self {
        let (chi_plus, chi_minus) = spec.effective_chi();
        TwistedModule {
            carrier: spec.carrier(),
            fields: scalar_fields(spec),
            kmax: spec.chi_support_max().unwrap_or(0).max(0),
            spec: spec.clone(),
            chi_plus,
            chi_minus,
        }
    }

    pub fn spec(&self) -> &ModuleSpec {
        &self.spec
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn fields(&self) -> &ScalarFields {
        &self.fields
    }

    pub fn chi(&self, sign: Sign) -> &LaurentData {
        match sign {
            Sign::Plus => &self.chi_plus,
            Sign::Minus => &self.chi_minus,
        }
    }

    /// Carrier basis up to a weight.
    pub fn basis(&self, max_weight: HalfInt) -> Vec<FermionMonomial> {
        self.carrier.basis(max_weight, None)
    }

    /// The doubled-mode coefficients of `G^sign(i-½)` as a combination of
    /// `Ψ^sign` modes.
    pub fn g_modes(&self, sign: Sign, i: i64) -> BTreeMap<i64, Scalar> {
        let mut modes: BTreeMap<i64, Scalar> = BTreeMap::new();
        let mut push = |twice: i64, c: Scalar| {
            let e = modes.entry(twice).or_default();
            *e += &c;
        };
        push(2 * i - 1, Scalar::from_int(-i));
        for (k, c) in self.chi(sign).iter() {
            push(2 * (i - k) - 1, c.clone());
        }
        modes.retain(|_, c| !c.is_zero());
        modes
    }
}

impl ARepresentation for TwistedModule {
    type Mono = FermionMonomial;

    fn vacuum(&self) -> FermionMonomial {
        FermionMonomial::vacuum()
    }

    fn fermion<'a>(&self, m: &'a FermionMonomial) -> &'a FermionMonomial {
        m
    }

    fn weight(&self, m: &FermionMonomial) -> HalfInt {
        m.weight()
    }

    fn in_carrier(&self, m: &FermionMonomial) -> bool {
        self.carrier.contains(m)
    }

    fn apply(&self, gen: AGenerator, m: &FermionMonomial) -> FockVector {
        match gen {
            AGenerator::Gplus(r) | AGenerator::Gminus(r) => {
                assert!(r.is_half_odd(), "odd generators need r ∈ ℤ + ½");
                let sign = if matches!(gen, AGenerator::Gplus(_)) {
                    Sign::Plus
                } else {
                    Sign::Minus
                };
                let i = (r.twice() + 1) / 2;
                psi_sum(sign, &self.g_modes(sign, i), m)
            }
            AGenerator::S(n) => FockVector::term(m.clone(), self.fields.s(n)),
            AGenerator::T(n) => FockVector::term(m.clone(), self.fields.t(n)),
        }
    }

    fn g_index_max(&self, m: &FermionMonomial) -> i64 {
        (m.max_mode_twice() + 1) / 2 + self.kmax
    }

    fn describe(&self) -> String {
        self.spec.to_string()
    }
}

/// Applies an `𝒜` generator to a vector of the module, rejecting vectors
/// outside the carrier.
pub fn a_apply(gen: AGenerator, spec: &ModuleSpec, v: &FockVector) -> Result<FockVector> {
    let module = TwistedModule::new(spec);
    ensure_carrier(&module, v)?;
    Ok(module.apply_vec(gen, v))
}

pub(crate) fn ensure_carrier<R: ARepresentation>(rep: &R, v: &LinComb<R::Mono>) -> Result<()> {
    match v.keys().find(|m| !rep.in_carrier(m)) {
        Some(m) => Err(CoreError::CarrierViolation(format!(
            "{m} is not in the carrier of {}",
            rep.describe()
        ))),
        None => Ok(()),
    }
}

/// Monomials of `γ±(-n)`, `n ≥ 1`, as decreasing multisets.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GammaMonomial {
    plus: Vec<i64>,
    minus: Vec<i64>,
}

impl GammaMonomial {
    pub fn new(mut plus: Vec<i64>, mut minus: Vec<i64>) -> Result<Self> {
        if plus.iter().chain(&minus).any(|p| *p <= 0) {
            return Err(CoreError::InvalidArgument("γ parts must be positive".to_string()));
        }
        plus.sort_unstable_by(|a, b| b.cmp(a));
        minus.sort_unstable_by(|a, b| b.cmp(a));
        Ok(GammaMonomial { plus, minus })
    }

    pub fn weight(&self) -> i64 {
        self.plus.iter().chain(&self.minus).sum()
    }

    pub fn is_one(&self) -> bool {
        self.plus.is_empty() && self.minus.is_empty()
    }

    /// Multiplies by `γ^sign(-part)`.
    pub fn times(&self, sign: Sign, part: i64) -> GammaMonomial {
        let mut out = self.clone();
        let block = match sign {
            Sign::Plus => &mut out.plus,
            Sign::Minus => &mut out.minus,
        };
        let pos = block.iter().take_while(|p| **p > part).count();
        block.insert(pos, part);
        out
    }
}

impl fmt::Display for GammaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.plus {
            write!(f, "γ+({})", -p)?;
        }
        for p in &self.minus {
            write!(f, "γ-({})", -p)?;
        }
        Ok(())
    }
}

impl fmt::Debug for GammaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A basis monomial `γ ⊗ Ψ` of the universal module.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VacuumMonomial {
    pub f: FermionMonomial,
    pub g: GammaMonomial,
}

impl fmt::Display for VacuumMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.g, self.f)
    }
}

impl fmt::Debug for VacuumMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `F ⊗ ℂ[γ±(-1), γ±(-2), …]` with `G±(i-½) = -iΨ±(i-½) + Σ_{k<0} γ±(k)Ψ±(i-k-½)`.
///
/// The central elements act by multiplication:
/// `T(n) = (γ⁺(n) - γ⁻(n))/2` and
/// `S(n) = (2Σ_{k+l=n} γ⁺(k)γ⁻(l) - (n+1)(γ⁺(n) + γ⁻(n)))/4`, all indices
/// negative.
#[derive(Clone, Copy, Debug, Default)]
pub struct VacuumModule;

impl VacuumModule {
    fn gamma_term(m: &VacuumMonomial, sign: Sign, k: i64, c: Scalar) -> LinComb<VacuumMonomial> {
        LinComb::term(
            VacuumMonomial {
                f: m.f.clone(),
                g: m.g.times(sign, -k),
            },
            c,
        )
    }
}

impl ARepresentation for VacuumModule {
    type Mono = VacuumMonomial;

    fn vacuum(&self) -> VacuumMonomial {
        VacuumMonomial::default()
    }

    fn fermion<'a>(&self, m: &'a VacuumMonomial) -> &'a FermionMonomial {
        &m.f
    }

    fn weight(&self, m: &VacuumMonomial) -> HalfInt {
        m.f.weight() + HalfInt::int(m.g.weight())
    }

    fn in_carrier(&self, _m: &VacuumMonomial) -> bool {
        true
    }

    fn apply(&self, gen: AGenerator, m: &VacuumMonomial) -> LinComb<VacuumMonomial> {
        let mut out = LinComb::zero();
        match gen {
            AGenerator::Gplus(r) | AGenerator::Gminus(r) => {
                assert!(r.is_half_odd(), "odd generators need r ∈ ℤ + ½");
                let sign = if matches!(gen, AGenerator::Gplus(_)) {
                    Sign::Plus
                } else {
                    Sign::Minus
                };
                let i = (r.twice() + 1) / 2;
                if let Some((neg, f)) = m.f.apply_psi(sign, r) {
                    let c = Scalar::from_int(if neg { i } else { -i });
                    out.add_term(VacuumMonomial { f, g: m.g.clone() }, c);
                }
                let low = i - (m.f.max_mode_twice() + 1) / 2;
                for k in low..=-1 {
                    let mode = HalfInt::from_twice(2 * (i - k) - 1);
                    if let Some((neg, f)) = m.f.apply_psi(sign, mode) {
                        out.add_term(
                            VacuumMonomial {
                                f,
                                g: m.g.times(sign, -k),
                            },
                            if neg { -Scalar::one() } else { Scalar::one() },
                        );
                    }
                }
            }
            AGenerator::T(n) => {
                if n <= -1 {
                    let half = Scalar::frac(1, 2);
                    out = Self::gamma_term(m, Sign::Plus, n, half.clone()) + Self::gamma_term(m, Sign::Minus, n, -half);
                }
            }
            AGenerator::S(n) => {
                if n <= -2 {
                    let quarter = Scalar::frac(1, 4);
                    for k in (n + 1)..=-1 {
                        let l = n - k;
                        let g = m.g.times(Sign::Plus, -k).times(Sign::Minus, -l);
                        out.add_term(VacuumMonomial { f: m.f.clone(), g }, Scalar::frac(1, 2));
                    }
                    let c = &quarter * &Scalar::from_int(-(n + 1));
                    out = out + Self::gamma_term(m, Sign::Plus, n, c.clone()) + Self::gamma_term(m, Sign::Minus, n, c);
                }
            }
        }
        out
    }

    fn g_index_max(&self, m: &VacuumMonomial) -> i64 {
        (m.f.max_mode_twice() + 1) / 2
    }

    fn describe(&self) -> String {
        "vacuum module".to_string()
    }
}

/// `{A, B} v` or `[A, B] v`, depending on the parities.
fn bracket<R: ARepresentation>(rep: &R, a: AGenerator, b: AGenerator, v: &LinComb<R::Mono>) -> LinComb<R::Mono> {
    let ab = rep.apply_vec(a, &rep.apply_vec(b, v));
    let ba = rep.apply_vec(b, &rep.apply_vec(a, v));
    if a.is_odd() && b.is_odd() {
        ab + ba
    } else {
        ab - ba
    }
}

/// Checks the defining relations of `𝒜` on the given basis vectors for all
/// odd modes with `|r| ≤ mode_bound` and central modes with `|n| ≤ mode_bound`.
pub fn a_relation_check_on<R: ARepresentation>(rep: &R, basis: &[R::Mono], mode_bound: HalfInt) -> RelationReport {
    let mut odd = Vec::new();
    let mut t = -mode_bound.twice();
    if t % 2 == 0 {
        t += 1;
    }
    while t <= mode_bound.twice() {
        odd.push(HalfInt::from_twice(t));
        t += 2;
    }
    let nmax = mode_bound.twice().div_euclid(2);
    let mut report = RelationReport::default();
    for m in basis {
        let v = LinComb::basis(m.clone());
        for &r in &odd {
            for &s in &odd {
                let lhs = bracket(rep, AGenerator::Gplus(r), AGenerator::Gminus(s), &v);
                let n = (r + s).twice() / 2;
                let mut rhs = rep.apply_vec(AGenerator::S(n), &v).scaled(&Scalar::from_int(2));
                rhs.add_scaled(&(r - s).to_scalar(), &rep.apply_vec(AGenerator::T(n), &v));
                if n == 0 {
                    let rr = r.to_scalar();
                    rhs.add_scaled(&-(&(&rr * &rr) - &Scalar::frac(1, 4)), &v);
                }
                let diff = lhs - rhs;
                let zero = diff.is_zero();
                report.record(|| format!("{{G+({r}), G-({s})}}"), || m.to_string(), &diff, zero);
                if r <= s {
                    for sign in [Sign::Plus, Sign::Minus] {
                        let d = bracket(rep, AGenerator::g(sign, r), AGenerator::g(sign, s), &v);
                        let zero = d.is_zero();
                        report.record(
                            || format!("{{G{}({r}), G{}({s})}}", sign.symbol(), sign.symbol()),
                            || m.to_string(),
                            &d,
                            zero,
                        );
                    }
                }
            }
            for n in -nmax..=nmax {
                for central in [AGenerator::S(n), AGenerator::T(n)] {
                    for g in [AGenerator::Gplus(r), AGenerator::Gminus(r)] {
                        let d = bracket(rep, central, g, &v);
                        let zero = d.is_zero();
                        report.record(|| format!("[{central}, {g}]"), || m.to_string(), &d, zero);
                    }
                }
            }
        }
    }
    report
}

/// Checks the `𝒜` relations on every carrier basis vector of weight at most
/// `weight_bound`.
pub fn a_relation_check(spec: &ModuleSpec, mode_bound: HalfInt, weight_bound: HalfInt) -> RelationReport {
    let module = TwistedModule::new(spec);
    let basis = module.basis(weight_bound);
    a_relation_check_on(&module, &basis, mode_bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::frac(n, d)
    }

    fn vac() -> FockVector {
        FockVector::basis(FermionMonomial::vacuum())
    }

    fn mono(plus: &[i64], minus: &[i64]) -> FermionMonomial {
        FermionMonomial::from_twice(plus.to_vec(), minus.to_vec()).unwrap()
    }

    #[test]
    fn central_scalars() {
        let (l, m) = (q(1, 2), q(1, 3));
        let f = scalar_fields(&ModuleSpec::full_simple(l.clone(), m.clone()));
        assert_eq!(f.t(0), q(1, 12));
        let s0 = &(&(&Scalar::from_int(2) * &(&l * &m)) - &l) - &m;
        assert_eq!(f.s(0), &s0 / &Scalar::from_int(4));
        let z = scalar_fields(&ModuleSpec::full_simple(Scalar::zero(), Scalar::zero()));
        assert!(z.s_series.is_zero() && z.t_series.is_zero());
        let t = scalar_fields(&ModuleSpec::Tilde {
            chi: LaurentData::simple_pole(-q(2, 5)),
        });
        assert_eq!(t.t(0), q(1, 5));
    }

    #[test]
    fn generator_actions() {
        let lam = q(1, 2);
        let chi0 = q(1, 3);
        let spec = ModuleSpec::full_simple(lam.clone(), chi0.clone());
        let got = a_apply(AGenerator::Gplus(HalfInt::from_twice(-3)), &spec, &vac()).unwrap();
        assert_eq!(got, FockVector::term(mono(&[3], &[]), &lam + &Scalar::one()));
        let step = a_apply(AGenerator::Gminus(-HalfInt::HALF), &spec, &vac()).unwrap();
        let got = a_apply(AGenerator::Gminus(HalfInt::from_twice(-3)), &spec, &step).unwrap();
        let c = &chi0 * &(&chi0 + &Scalar::one());
        assert_eq!(got, FockVector::term(mono(&[], &[3, 1]), c));
        let tilde = ModuleSpec::Tilde {
            chi: LaurentData::simple_pole(q(3, 7)),
        };
        assert!(a_apply(AGenerator::Gplus(-HalfInt::HALF), &tilde, &vac())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn carrier_is_enforced() {
        let tilde = ModuleSpec::Tilde {
            chi: LaurentData::zero(),
        };
        let v = FockVector::basis(mono(&[1], &[]));
        assert!(matches!(
            a_apply(AGenerator::T(0), &tilde, &v),
            Err(CoreError::CarrierViolation(_))
        ));
    }

    #[test]
    fn simple_anticommutator_on_vacuum() {
        let (l, m) = (q(1, 2), q(1, 3));
        let spec = ModuleSpec::full_simple(l.clone(), m.clone());
        let module = TwistedModule::new(&spec);
        let v = vac();
        let lhs = bracket(
            &module,
            AGenerator::Gplus(HalfInt::HALF),
            AGenerator::Gminus(-HalfInt::HALF),
            &v,
        );
        let want = &m * &(&l - &Scalar::one());
        assert_eq!(lhs, v.scaled(&want));
    }

    #[test]
    fn relations_small_window() {
        let spec = ModuleSpec::full_simple(q(1, 2), q(1, 3));
        let r = a_relation_check(&spec, HalfInt::from_twice(3), HalfInt::int(2));
        assert!(r.passed(), "{:?}", r.violations.first());
        let spec = ModuleSpec::Bar { m: 1, n: 2 };
        let r = a_relation_check(&spec, HalfInt::from_twice(3), HalfInt::int(3));
        assert!(r.passed(), "{:?}", r.violations.first());
    }

    #[test]
    fn vacuum_module_relations() {
        let rep = VacuumModule;
        let mut basis = vec![rep.vacuum()];
        let g = GammaMonomial::new(vec![1], vec![]).unwrap();
        basis.push(VacuumMonomial { f: mono(&[1], &[3]), g });
        let r = a_relation_check_on(&rep, &basis, HalfInt::from_twice(5));
        assert!(r.passed(), "{:?}", r.violations.first());
    }

    #[test]
    fn conditions() {
        assert!(full_conditions(&LaurentData::simple_pole(q(1, 2))).is_ok());
        assert!(full_conditions(&LaurentData::simple_pole(q(2, 1))).is_err());
        assert!(tilde_conditions(&LaurentData::simple_pole(Scalar::one())).is_ok());
        assert!(tilde_conditions(&LaurentData::zero()).is_err());
        assert!(tilde_conditions(&LaurentData::monomial(1, Scalar::one())).is_ok());
    }
}
