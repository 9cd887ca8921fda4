//! Dispatch from a parsed config to the library checks.

use critical_fock::affine::{
    flow_compose, hw_identify, sl2_apply, sl2_relation_check, tensor_basis, top_level_vector, AffineModuleSpec, Sl2Gen,
    SpectralFlow, TensorVector, TensorWindow, TwistedMode,
};
use critical_fock::amodule::{a_relation_check, full_conditions, tilde_conditions, ModuleSpec};
use critical_fock::certify::{
    fock_certificate_setup, generation_check, wakimoto_certificate_setup, CertificateReport, Witness,
};
use critical_fock::characters::character_check;
use critical_fock::fock::FermionMonomial;
use critical_fock::report::RelationReport;
use critical_fock::weyl::{
    intertwiner_check, realized_weyl_relation_check, wakimoto_relation_check, weyl_relation_check, WeylMonomial,
};
use critical_fock::{CoreError, HalfInt, Scalar};
use serde_json::{json, Value};

use crate::config::{Bounds, Command, JobConfig, VectorConfig, WitnessConfig, SCHEMA_VERSION};
use crate::error::{CliError, Result};
use crate::report::{CheckRecord, JobReport};

/// Failure records keep at most this many witnesses.
pub const MAX_WITNESSES: usize = 16;

/// Runs one job. `Err` means the job could not run (exit 2 or 3); a check
/// that runs and fails is reported through `pass`.
pub fn run_job(command: Command, config: &JobConfig) -> Result<JobReport> {
    config.validate()?;
    config.for_command(command)?;
    let details = match command {
        Command::Relations => relations(config)?,
        Command::Certify => certify(config)?,
        Command::Character => character(config)?,
        Command::Identify => identify(config)?,
        Command::FlowCheck => flow_check(config)?,
        Command::WakimotoCheck => wakimoto(config)?,
        Command::GenerationCheck => generation(config)?,
        Command::Replay => replay(config)?,
    };
    Ok(JobReport::new(command, config.clone(), details))
}

fn relation_record(check: &str, r: &RelationReport, mut data: Value) -> CheckRecord {
    data["checked"] = json!(r.checked);
    data["violations"] = json!(r.violations.len());
    let witnesses = r
        .violations
        .iter()
        .take(MAX_WITNESSES)
        .map(|v| json!({"relation": v.relation, "vector": v.vector, "difference": v.difference}))
        .collect();
    CheckRecord::new(check, r.passed(), data).with_witnesses(witnesses)
}

fn relations(config: &JobConfig) -> Result<Vec<CheckRecord>> {
    let spec = config.module()?.to_spec()?;
    let b = &config.bounds;
    let mut out = Vec::new();
    if let Some(x2) = b.mode_bound_x2 {
        let w = b.need("weight_bound")?;
        let r = a_relation_check(&spec, HalfInt::from_twice(x2), HalfInt::int(w));
        out.push(relation_record(
            "a_relations",
            &r,
            json!({"module": spec.to_string(), "mode_bound_x2": x2, "weight_bound": w}),
        ));
    }
    if let Some(mode) = b.mode_bound {
        let degree = b.need("degree_bound")?;
        let charge = b.need("max_charge")?;
        let affine = AffineModuleSpec::with_flow(spec.clone(), config.flow);
        let window = TensorWindow {
            sectors: vec![config.sector],
            max_lattice_charge: charge,
            max_degree: HalfInt::int(degree),
        };
        let r = sl2_relation_check(&affine, mode, &window);
        out.push(relation_record(
            "sl2_relations",
            &r,
            json!({"module": spec.to_string(), "flow": config.flow, "sector": config.sector,
                   "mode_bound": mode, "degree_bound": degree, "max_charge": charge}),
        ));
    }
    if out.is_empty() {
        return Err(CliError::Config(
            "relations needs bounds.mode_bound_x2 (𝒜 suite) or bounds.mode_bound (sl2 suite)".into(),
        ));
    }
    Ok(out)
}

fn conditions(spec: &ModuleSpec) -> String {
    let verdict = match spec {
        ModuleSpec::Full { chi_plus, chi_minus } => full_conditions(chi_plus).and_then(|_| full_conditions(chi_minus)),
        ModuleSpec::Tilde { chi } => tilde_conditions(chi),
        ModuleSpec::Bar { .. } => Ok(()),
    };
    match verdict {
        Ok(()) => "hold".to_string(),
        Err(e) => e.to_string(),
    }
}

fn replay_config(config: &JobConfig, bounds: Bounds, witness: WitnessConfig) -> Value {
    let replay = JobConfig {
        schema_version: SCHEMA_VERSION,
        command: Some(Command::Replay),
        module: config.module.clone(),
        sector: 0,
        flow: 0,
        bounds,
        vector: None,
        s: None,
        depth: None,
        target: None,
        witness: Some(witness),
        output: None,
    };
    serde_json::to_value(replay).expect("configs serialize")
}

fn certificate_record<M: std::fmt::Display + PartialEq>(
    check: &str,
    report: &CertificateReport<M>,
    mut data: Value,
    witness: impl Fn(&Witness<M>) -> (WitnessConfig, Value),
) -> CheckRecord {
    data["module"] = json!(report.module);
    data["truncation"] = json!(report.truncation);
    data["slice_dimension"] = json!(report.slice_dimension);
    data["cyclic_span_dimension"] = json!(report.cyclic_span_dimension);
    data["cyclic_from_vacuum"] = json!(report.cyclic_from_vacuum);
    data["cocyclic_to_vacuum"] = json!(report.cocyclic_to_vacuum);
    data["failure_count"] = json!(report.failures.len());
    data["submodule_witness"] = json!(report.submodule_witness.as_ref().map(|w| w.monomial.to_string()));
    // The minimal witness first, then the rest in order.
    let mut ordered: Vec<&Witness<M>> = report.submodule_witness.iter().collect();
    ordered.extend(
        report
            .failures
            .iter()
            .filter(|w| Some(*w) != report.submodule_witness.as_ref()),
    );
    let witnesses = ordered
        .into_iter()
        .take(MAX_WITNESSES)
        .map(|w| {
            let (cfg, replay) = witness(w);
            json!({"witness": cfg, "monomial": w.monomial.to_string(), "replay": replay})
        })
        .collect();
    CheckRecord::new(check, report.passed(), data).with_witnesses(witnesses)
}

fn certify(config: &JobConfig) -> Result<Vec<CheckRecord>> {
    let spec = config.module()?.to_spec()?;
    let wb = config.bounds.need("weight_bound")?;
    let report = fock_certificate_setup(&spec, wb).run()?;
    let bounds = Bounds {
        weight_bound: Some(wb),
        ..Bounds::default()
    };
    Ok(vec![certificate_record(
        "certificate",
        &report,
        json!({"conditions": conditions(&spec)}),
        |w: &Witness<FermionMonomial>| {
            let cfg = WitnessConfig::from_fock(w);
            (cfg.clone(), replay_config(config, bounds.clone(), cfg))
        },
    )])
}

fn character(config: &JobConfig) -> Result<Vec<CheckRecord>> {
    let target = config
        .target
        .as_ref()
        .ok_or_else(|| CliError::Config("target is required for this job".into()))?
        .to_target();
    let n = config.bounds.need("degree_bound")?;
    let charge = config.bounds.need("max_charge")?;
    let r = character_check(&target, n, charge)?;
    let columns: Vec<Value> = r
        .character
        .as_ref()
        .map(|c| {
            c.columns()
                .iter()
                .map(|col| {
                    let entries: Vec<Value> = col
                        .entries
                        .iter()
                        .map(|(l0, dim)| json!({"l0_x2": l0.twice(), "dim": dim}))
                        .collect();
                    json!({"h0": col.h0, "entries": entries})
                })
                .collect()
        })
        .unwrap_or_default();
    let mut witnesses: Vec<Value> = r
        .mismatched_columns
        .iter()
        .map(|h| json!({"mismatched_column_h0": h}))
        .collect();
    witnesses.extend(r.support_violations.iter().map(|s| json!({"support_violation": s})));
    witnesses.extend(
        r.non_integral_degrees
            .iter()
            .map(|d| json!({"non_integral_l0_x2": d.twice()})),
    );
    witnesses.truncate(MAX_WITNESSES);
    let data = json!({
        "target": r.target,
        "bound": r.bound,
        "max_charge": charge,
        "expected": r.expected,
        "two_forms_agree": r.two_forms_agree,
        "columns": columns,
    });
    Ok(vec![
        CheckRecord::new("character", r.passed(), data).with_witnesses(witnesses)
    ])
}

fn identify(config: &JobConfig) -> Result<Vec<CheckRecord>> {
    let spec = AffineModuleSpec::with_flow(config.module()?.to_spec()?, config.flow);
    let v = config.vector.as_ref().unwrap_or(&VectorConfig::Vacuum).build()?;
    let s = config.s.unwrap_or(0);
    let depth = config
        .depth
        .ok_or_else(|| CliError::Config("depth is required for this job".into()))?;
    let r = hw_identify(&spec, &v, s, depth)?;
    let data = json!({
        "module": spec.base.to_string(),
        "flow": spec.flow,
        "vector": v.to_string(),
        "s": r.s,
        "depth": depth,
        "x": r.x,
        "label": r.label,
        "equivalent": r.equivalent,
    });
    let witnesses = r
        .failures
        .iter()
        .take(MAX_WITNESSES)
        .map(|f| json!({"failed": f}))
        .collect();
    Ok(vec![
        CheckRecord::new("highest_weight", r.found, data).with_witnesses(witnesses)
    ])
}

/// `π_s π_t = π_{s+t}` on every mode, and `π_s h(n) = h(n) + 2sδ_{n,0}`.
pub fn flow_algebra_check(flow_bound: i64, mode_bound: i64) -> RelationReport {
    let mut r = RelationReport::default();
    for s in -flow_bound..=flow_bound {
        for t in -flow_bound..=flow_bound {
            for x in Sl2Gen::ALL {
                for n in -mode_bound..=mode_bound {
                    let lhs = SpectralFlow(s).twist_mode(&SpectralFlow(t).twist(x, n));
                    let rhs = flow_compose(s, t).twist(x, n);
                    r.record(
                        || format!("π_{s} π_{t} {x}({n}) = π_{} {x}({n})", s + t),
                        || "mode algebra".to_string(),
                        &format!("{lhs:?} vs {rhs:?}"),
                        lhs == rhs,
                    );
                }
            }
        }
        for n in -mode_bound..=mode_bound {
            let got = SpectralFlow(s).twist(Sl2Gen::H, n);
            let want = TwistedMode {
                gen: Sl2Gen::H,
                mode: n,
                shift: Scalar::from_int(if n == 0 { 2 * s } else { 0 }),
            };
            r.record(
                || format!("π_{s} h({n}) = h({n}) + 2sδ"),
                || "mode algebra".to_string(),
                &format!("{got:?} vs {want:?}"),
                got == want,
            );
        }
    }
    r
}

/// The flowed action equals the plain action on the twisted mode.
pub fn flowed_action_check(
    base: &ModuleSpec,
    flow_bound: i64,
    mode_bound: i64,
    window: &TensorWindow,
) -> Result<RelationReport> {
    let plain = AffineModuleSpec::new(base.clone());
    let basis = tensor_basis(&base.carrier(), window);
    let mut r = RelationReport::default();
    for s in -flow_bound..=flow_bound {
        let flowed = AffineModuleSpec::with_flow(base.clone(), s);
        for t in &basis {
            let v = TensorVector::basis(t.clone());
            for x in Sl2Gen::ALL {
                for n in -mode_bound..=mode_bound {
                    let tm = SpectralFlow(s).twist(x, n);
                    let lhs = sl2_apply(x, n, &flowed, &v)?;
                    let mut rhs = sl2_apply(tm.gen, tm.mode, &plain, &v)?;
                    rhs.add_scaled(&tm.shift, &v);
                    let diff = lhs - rhs;
                    r.record(|| format!("π_{s}: {x}({n})"), || t.to_string(), &diff, diff.is_zero());
                }
            }
        }
    }
    Ok(r)
}

/// Ladder identities for the signed top-level vectors `w^{(s)}_j` of
/// `F(λ/z, μ/z) ⊗ F₋₁`: `e(n-s)w_j = δ_{n,0}(λ+j)w_{j+1}`,
/// `f(n+s)w_j = δ_{n,0}(μ-j)w_{j-1}`, `h(n)w_j = δ_{n,0}(2j-2s+λ-μ)w_j`
/// for `0 ≤ n ≤ mode_bound`.
pub fn top_level_check(
    lambda: &Scalar,
    mu: &Scalar,
    flow_bound: i64,
    level_bound: i64,
    mode_bound: i64,
) -> Result<RelationReport> {
    let spec = AffineModuleSpec::new(ModuleSpec::full_simple(lambda.clone(), mu.clone()));
    let mut r = RelationReport::default();
    for s in -flow_bound..=flow_bound {
        for j in -level_bound..=level_bound {
            let w = top_level_vector(s, j);
            let jj = Scalar::from_int(j);
            let h = &(&Scalar::from_int(2 * j - 2 * s) + lambda) - mu;
            let cases = [
                (Sl2Gen::E, -s, &(lambda + &jj), top_level_vector(s, j + 1)),
                (Sl2Gen::F, s, &(mu - &jj), top_level_vector(s, j - 1)),
                (Sl2Gen::H, 0, &h, w.clone()),
            ];
            for (x, offset, c, target) in cases {
                for n in 0..=mode_bound {
                    let got = sl2_apply(x, n + offset, &spec, &w)?;
                    let want = if n == 0 { target.scaled(c) } else { TensorVector::zero() };
                    let diff = got - want;
                    r.record(
                        || format!("{x}({}) w_{j}", n + offset),
                        || format!("s = {s}, j = {j}"),
                        &diff,
                        diff.is_zero(),
                    );
                }
            }
        }
    }
    Ok(r)
}

/// `(λ, μ)` when the module is `F(λ/z, μ/z)`.
fn simple_poles(spec: &ModuleSpec) -> Option<(Scalar, Scalar)> {
    let ModuleSpec::Full { chi_plus, chi_minus } = spec else {
        return None;
    };
    let only_zero = |c: &critical_fock::LaurentData| c.iter().all(|(k, _)| k == 0);
    (only_zero(chi_plus) && only_zero(chi_minus)).then(|| (chi_plus.coeff(0), chi_minus.coeff(0)))
}

fn flow_check(config: &JobConfig) -> Result<Vec<CheckRecord>> {
    let b = &config.bounds;
    let fb = b.need("flow_bound")?;
    let mb = b.need("mode_bound")?;
    let mut out = vec![relation_record(
        "flow_algebra",
        &flow_algebra_check(fb, mb),
        json!({"flow_bound": fb, "mode_bound": mb}),
    )];
    if let Some(module) = &config.module {
        let spec = module.to_spec()?;
        let degree = b.need("degree_bound")?;
        let charge = b.need("max_charge")?;
        let window = TensorWindow {
            sectors: vec![config.sector],
            max_lattice_charge: charge,
            max_degree: HalfInt::int(degree),
        };
        let r = flowed_action_check(&spec, fb, mb, &window)?;
        out.push(relation_record(
            "flowed_action",
            &r,
            json!({"module": spec.to_string(), "sector": config.sector, "degree_bound": degree, "max_charge": charge}),
        ));
        if let Some(level) = b.level_bound {
            let (lambda, mu) = simple_poles(&spec).ok_or_else(|| {
                CoreError::InvalidArgument("top-level identities need a Full module with simple poles".into())
            })?;
            let r = top_level_check(&lambda, &mu, fb, level, mb)?;
            out.push(relation_record(
                "top_level",
                &r,
                json!({"lambda": lambda, "mu": mu, "level_bound": level}),
            ));
        }
    }
    Ok(out)
}

fn wakimoto(config: &JobConfig) -> Result<Vec<CheckRecord>> {
    let chi = config.module()?.tilde_chi()?;
    let b = &config.bounds;
    let mb = b.need("mode_bound")?;
    let deg = b.need("degree_bound")?;
    let q = b.need("max_charge")?;
    let window = json!({"mode_bound": mb, "degree_bound": deg, "max_charge": q});
    let mut out = vec![
        relation_record("weyl_relations", &weyl_relation_check(mb, deg, q), window.clone()),
        relation_record(
            "realized_weyl_relations",
            &realized_weyl_relation_check(mb, deg, q),
            window.clone(),
        ),
        relation_record(
            "wakimoto_sl2_relations",
            &wakimoto_relation_check(&chi, mb, deg, q),
            json!({"chi": chi.to_string(), "mode_bound": mb, "degree_bound": deg, "max_charge": q}),
        ),
    ];
    let ir = intertwiner_check(&chi, deg, q);
    let mut rec = relation_record(
        "intertwiner",
        &ir.relations,
        json!({"chi": chi.to_string(), "degree_bound": deg, "max_charge": q,
               "rank": ir.rank, "basis_size": ir.basis_size}),
    );
    rec.pass = ir.passed();
    rec.witnesses.extend(
        ir.dimension_mismatches
            .iter()
            .take(MAX_WITNESSES)
            .map(|(d, c, w, f)| json!({"degree": d, "charge": c, "weyl_dimension": w, "fock_dimension": f})),
    );
    out.push(rec);
    if let Some(cert) = b.weight_bound {
        let report = wakimoto_certificate_setup(&chi, cert, q).run()?;
        let bounds = Bounds {
            degree_bound: Some(cert),
            max_charge: Some(q),
            ..Bounds::default()
        };
        out.push(certificate_record(
            "wakimoto_certificate",
            &report,
            json!({"chi": chi.to_string(), "max_charge": q}),
            |w: &Witness<WeylMonomial>| {
                let cfg = WitnessConfig::from_weyl(w);
                (cfg.clone(), replay_config(config, bounds.clone(), cfg))
            },
        ));
    }
    Ok(out)
}

fn generation(config: &JobConfig) -> Result<Vec<CheckRecord>> {
    let deg = config.bounds.need("degree_bound")?;
    let r = generation_check(deg)?;
    let data = serde_json::to_value(&r).expect("reports serialize");
    let witnesses = if r.s_identity_holds {
        Vec::new()
    } else {
        vec![json!({"s_identity_difference": r.s_identity_difference})]
    };
    Ok(vec![
        CheckRecord::new("generation", r.passed(), data).with_witnesses(witnesses)
    ])
}

/// Passes iff the recorded witness still breaks the certificate.
fn replay(config: &JobConfig) -> Result<Vec<CheckRecord>> {
    let witness = config
        .witness
        .as_ref()
        .ok_or_else(|| CliError::Config("witness is required for replay".into()))?;
    let bad = |e: CoreError| CliError::Config(format!("witness: {e}"));
    let (confirmed, shown, module) = match witness {
        WitnessConfig::Fock {
            kind,
            plus_x2,
            minus_x2,
        } => {
            let spec = config.module()?.to_spec()?;
            let wb = config.bounds.need("weight_bound")?;
            let monomial = FermionMonomial::from_twice(plus_x2.clone(), minus_x2.clone()).map_err(bad)?;
            let setup = fock_certificate_setup(&spec, wb);
            let w = Witness { kind: *kind, monomial };
            (setup.replay(&w)?, w.monomial.to_string(), spec.to_string())
        }
        WitnessConfig::Weyl {
            kind,
            a_parts,
            astar_parts,
        } => {
            let chi = config.module()?.tilde_chi()?;
            let deg = config.bounds.need("degree_bound")?;
            let q = config.bounds.need("max_charge")?;
            let monomial = WeylMonomial::new(a_parts.clone(), astar_parts.clone()).map_err(bad)?;
            let setup = wakimoto_certificate_setup(&chi, deg, q);
            let w = Witness { kind: *kind, monomial };
            (setup.replay(&w)?, w.monomial.to_string(), format!("W(-χ), χ = {chi}"))
        }
    };
    let data = json!({"module": module, "monomial": shown, "confirmed": confirmed});
    Ok(vec![CheckRecord::new("replay", confirmed, data)])
}
