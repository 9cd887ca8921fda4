//! Acceptance run. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any criterion fails. All comparisons are exact.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use critical_fock::affine::{
    flow_compose, hw_identify, sl2_apply, sl2_apply_closed, sl2_relation_check, tensor_basis, top_level_product,
    top_level_vector, AffineModuleSpec, ClosedFamily, Sl2Gen, SpectralFlow, TensorVector, TensorWindow, TwistedMode,
};
use critical_fock::amodule::{a_relation_check, ModuleSpec};
use critical_fock::certify::{
    fock_certificate_setup, generation_check, irreducibility_certificate, proof_constant, proof_constant_by_word,
    wakimoto_certificate, ProofConstant,
};
use critical_fock::characters::{character_check, delta_paired_series, partition_series, CharacterTarget};
use critical_fock::fock::clifford_relation_check;
use critical_fock::weyl::{
    intertwiner_check, realized_weyl_relation_check, wakimoto_relation_check, weyl_relation_check,
};
use critical_fock::{HalfInt, LaurentData, Scalar};
use critical_fock_cli::JobReport;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || {
        format!("took {:.1}s, limit {}s", t.as_secs_f64(), limit.as_secs())
    })
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::frac(n, d)
}

fn z2() -> LaurentData {
    LaurentData::monomial(1, Scalar::one())
}

fn full_half_third() -> ModuleSpec {
    ModuleSpec::full_simple(q(1, 2), q(1, 3))
}

fn clifford() -> Outcome {
    let start = Instant::now();
    let r = clifford_relation_check(HalfInt::from_twice(9), HalfInt::int(5));
    ensure(r.passed(), || format!("{:?}", r.violations.first()))?;
    ensure(r.checked > 0, || "nothing checked".into())?;
    within(start, Duration::from_secs(30))?;
    Ok(format!("{} anticommutators", r.checked))
}

fn superalgebra() -> Outcome {
    let start = Instant::now();
    let specs = [
        full_half_third(),
        ModuleSpec::Full {
            chi_plus: LaurentData::zero(),
            chi_minus: LaurentData::from_pairs([(1, Scalar::one()), (0, Scalar::from_int(2))]),
        },
        ModuleSpec::Tilde {
            chi: LaurentData::simple_pole(Scalar::one()),
        },
        ModuleSpec::Bar { m: 1, n: 2 },
    ];
    let mut checked = 0;
    for spec in &specs {
        let r = a_relation_check(spec, HalfInt::from_twice(7), HalfInt::int(5));
        ensure(r.passed(), || format!("{spec}: {:?}", r.violations.first()))?;
        checked += r.checked;
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("{checked} relations on 4 modules"))
}

fn affine_suite() -> Outcome {
    // The lattice charge window is what keeps degree-4 slices finite; the
    // sector-0 slice with |charge| ≤ 2 is recorded here.
    let window = TensorWindow {
        sectors: vec![0],
        max_lattice_charge: 2,
        max_degree: HalfInt::int(4),
    };
    let mut checked = 0;
    for base in [full_half_third(), ModuleSpec::Tilde { chi: z2() }] {
        let spec = AffineModuleSpec::new(base);
        let r = sl2_relation_check(&spec, 3, &window);
        ensure(r.passed(), || format!("{}: {:?}", spec.base, r.violations.first()))?;
        checked += r.checked;
    }
    // [e(m), f(-m)] = h(0) - 2m on the vacuum, read off directly.
    let spec = AffineModuleSpec::new(full_half_third());
    let one = top_level_vector(0, 0);
    let apply = |x, n, v: &TensorVector| sl2_apply(x, n, &spec, v).unwrap();
    for m in -3..=3 {
        let ef = apply(Sl2Gen::E, m, &apply(Sl2Gen::F, -m, &one)) - apply(Sl2Gen::F, -m, &apply(Sl2Gen::E, m, &one));
        let mut want = apply(Sl2Gen::H, 0, &one);
        want.add_scaled(&Scalar::from_int(-2 * m), &one);
        ensure(ef == want, || format!("[e({m}),f({})] on the vacuum", -m))?;
    }
    // Both evaluation paths on the three closed-form families.
    let families = [
        ClosedFamily::Bar { n: 0 },
        ClosedFamily::Bar { n: 1 },
        ClosedFamily::Bar { n: 2 },
        ClosedFamily::Tilde { lambda: q(2, 5) },
        ClosedFamily::Full {
            lambda: q(1, 2),
            mu: q(1, 3),
        },
    ];
    let dual = TensorWindow {
        sectors: vec![-1, 0, 1],
        max_lattice_charge: 2,
        max_degree: HalfInt::int(3),
    };
    let mut compared = 0;
    for family in &families {
        let spec = AffineModuleSpec::new(family.base_spec());
        for t in tensor_basis(&family.carrier(), &dual) {
            let v = TensorVector::basis(t);
            for x in Sl2Gen::ALL {
                for m in -3..=3 {
                    let closed = sl2_apply_closed(family, x, m, &v).map_err(|e| e.to_string())?;
                    let general = sl2_apply(x, m, &spec, &v).map_err(|e| e.to_string())?;
                    ensure(closed == general, || format!("{family:?}: {x}({m}) on {v}"))?;
                    compared += 1;
                }
            }
        }
    }
    Ok(format!("{checked} relations, {compared} dual-path comparisons"))
}

fn pochhammer(x: &Scalar, n: u32) -> Scalar {
    (0..=n as i64).fold(Scalar::one(), |acc, j| &acc * &(x + &Scalar::from_int(j)))
}

fn certificates() -> Outcome {
    for spec in [
        full_half_third(),
        ModuleSpec::Tilde { chi: z2() },
        ModuleSpec::Tilde {
            chi: LaurentData::simple_pole(Scalar::one()),
        },
        ModuleSpec::Bar { m: 0, n: 2 },
    ] {
        let r = irreducibility_certificate(&spec, 4).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{spec}: {:?}", r.submodule_witness))?;
    }
    let zero = ModuleSpec::Tilde {
        chi: LaurentData::zero(),
    };
    let setup = fock_certificate_setup(&zero, 4);
    let r = setup.run().map_err(|e| e.to_string())?;
    ensure(!r.passed(), || "Tilde(0) certificate passed".into())?;
    let w = r.submodule_witness.clone().ok_or("Tilde(0) has no witness")?;
    ensure(setup.replay(&w).map_err(|e| e.to_string())?, || {
        "witness does not replay".into()
    })?;
    let half = LaurentData::simple_pole(q(1, 2));
    for n in 0..=3 {
        let kind = ProofConstant::C { n };
        let c = proof_constant(&kind, &half).map_err(|e| e.to_string())?;
        let word = proof_constant_by_word(&kind, &half).map_err(|e| e.to_string())?;
        ensure(c == word && c == pochhammer(&q(1, 2), n), || {
            format!("C_{n} for χ = 1/2z: {c} vs {word}")
        })?;
        let c = proof_constant(&kind, &z2()).map_err(|e| e.to_string())?;
        let word = proof_constant_by_word(&kind, &z2()).map_err(|e| e.to_string())?;
        ensure(c == word, || format!("C_{n} for χ = z^-2: {c} vs {word}"))?;
    }
    Ok(format!("Tilde(0) witness {}", w.monomial))
}

fn wakimoto() -> Outcome {
    let charge = 2;
    let r = weyl_relation_check(3, 4, charge);
    ensure(r.passed(), || format!("Weyl: {:?}", r.violations.first()))?;
    let r = realized_weyl_relation_check(3, 4, charge);
    ensure(r.passed(), || format!("realized Weyl: {:?}", r.violations.first()))?;
    for chi in [
        LaurentData::simple_pole(Scalar::one()),
        z2(),
        LaurentData::simple_pole(q(1, 3)),
    ] {
        let ir = intertwiner_check(&chi, 4, charge);
        ensure(ir.passed(), || format!("intertwiner χ = {chi}: {ir:?}"))?;
        let r = wakimoto_relation_check(&chi, 3, 4, charge);
        ensure(r.passed(), || format!("Wakimoto χ = {chi}: {:?}", r.violations.first()))?;
    }
    let cert = wakimoto_certificate(&z2(), 3, charge).map_err(|e| e.to_string())?;
    ensure(cert.passed(), || format!("certificate: {:?}", cert.submodule_witness))?;
    Ok(format!("|charge| ≤ {charge}"))
}

fn highest_weight() -> Outcome {
    for n in 0..=2u32 {
        let spec = AffineModuleSpec::new(ModuleSpec::Bar { m: 0, n });
        for s in -1..=1 {
            // 𝟙 ⊗ e^{-sβ}
            let v = top_level_product(s, 0);
            ensure(v == top_level_vector(s, 0), || "w_0 carries no sign".into())?;
            let r = hw_identify(&spec, &v, s, 4).map_err(|e| e.to_string())?;
            let n = n as i64;
            let inner = format!("L({}Λ0+{n}Λ1)", -2 - n);
            let label = if s == 0 {
                inner
            } else {
                format!("π_{{{}}}({inner})", -s)
            };
            ensure(r.found, || format!("n = {n}, s = {s}: {:?}", r.failures))?;
            ensure(r.label.as_deref() == Some(label.as_str()), || {
                format!("{:?} vs {label}", r.label)
            })?;
            if s == 1 {
                let pair = format!("L({n}Λ0-{}Λ1)", n + 2);
                ensure(r.equivalent.as_deref() == Some(pair.as_str()), || {
                    format!("{:?} vs {pair}", r.equivalent)
                })?;
            }
        }
    }
    let r = hw_identify(&AffineModuleSpec::new(full_half_third()), &top_level_vector(0, 0), 0, 4)
        .map_err(|e| e.to_string())?;
    ensure(!r.found, || "Full(1/2, 1/3) vacuum reported highest weight".into())?;
    Ok("9 labels, negative control rejected".into())
}

fn generation() -> Outcome {
    let r = generation_check(3).map_err(|e| e.to_string())?;
    ensure(r.passed(), || format!("{r:?}"))?;
    ensure(r.closure_dimension == r.slice_dimension && r.closure_in_slice, || {
        format!("{r:?}")
    })?;
    ensure(r.s_identity_holds, || r.s_identity_difference.clone())?;
    ensure(r.sl2_only_dimension < r.closure_dimension, || format!("{r:?}"))?;
    Ok(format!(
        "slice {} = closure, {{e,f,h}} only {}",
        r.slice_dimension, r.sl2_only_dimension
    ))
}

/// Pairs of partitions of `n`, counted by enumeration.
fn partition_pairs(n: i64) -> u64 {
    fn count(n: i64, max: i64) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|p| count(n - p, p)).sum()
    }
    (0..=n).map(|a| count(a, a) * count(n - a, n - a)).sum()
}

fn characters() -> Outcome {
    let start = Instant::now();
    let oracle: Vec<u64> = (0..=8).map(partition_pairs).collect();
    ensure(oracle == [1, 2, 5, 10, 20, 36, 65, 110, 185], || {
        format!("oracle {oracle:?}")
    })?;
    ensure(partition_series(-2, 8).map_err(|e| e.to_string())? == oracle, || {
        "partition_series(-2, 8)".into()
    })?;
    let r = character_check(&CharacterTarget::PiZero, 8, 4).map_err(|e| e.to_string())?;
    ensure(r.passed(), || {
        format!("Π(0): {:?} {:?}", r.mismatched_columns, r.support_violations)
    })?;
    let ch = r.character.as_ref().ok_or("no table")?;
    let columns = ch.columns();
    ensure(!columns.is_empty(), || "no columns".into())?;
    for col in &columns {
        ensure(ch.integral_column(&col.h0).as_deref() == Some(&oracle[..]), || {
            format!("column {}", col.h0)
        })?;
    }
    for (_, l0) in ch.table.keys() {
        ensure(l0.is_integer() && *l0 >= HalfInt::ZERO, || {
            format!("L0 eigenvalue {l0}")
        })?;
    }
    let e = character_check(
        &CharacterTarget::E {
            lambda: q(1, 2),
            mu: q(1, 3),
        },
        6,
        4,
    )
    .map_err(|e| e.to_string())?;
    ensure(e.passed(), || {
        format!("E: {:?} {:?}", e.mismatched_columns, e.support_violations)
    })?;
    for col in e.character.as_ref().ok_or("no table")?.columns() {
        let k = &(&col.h0 - &q(1, 6)) / &Scalar::from_int(2);
        ensure(k.is_integer(), || format!("h0 = {} outside 1/6 + 2Z", col.h0))?;
    }
    ensure(e.two_forms_agree && delta_paired_series(6) == oracle[..7], || {
        "two forms".into()
    })?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("{} columns of Π(0)", columns.len()))
}

fn spectral_flow() -> Outcome {
    for s in -2..=2 {
        for t in -2..=2 {
            for x in Sl2Gen::ALL {
                for n in -6..=6 {
                    let two = SpectralFlow(s).twist_mode(&SpectralFlow(t).twist(x, n));
                    ensure(two == flow_compose(s, t).twist(x, n), || format!("π_{s}π_{t} {x}({n})"))?;
                }
            }
        }
    }
    let shifted = TwistedMode {
        gen: Sl2Gen::H,
        mode: 0,
        shift: Scalar::from_int(2),
    };
    ensure(SpectralFlow(1).twist(Sl2Gen::H, 0) == shifted, || "π_1 h(0)".into())?;
    // The same shift seen in the action.
    let plain = AffineModuleSpec::new(full_half_third());
    let flowed = AffineModuleSpec::with_flow(full_half_third(), 1);
    for j in -2..=2 {
        let v = top_level_vector(0, j);
        let mut want = sl2_apply(Sl2Gen::H, 0, &plain, &v).map_err(|e| e.to_string())?;
        want.add_scaled(&Scalar::from_int(2), &v);
        ensure(
            sl2_apply(Sl2Gen::H, 0, &flowed, &v).map_err(|e| e.to_string())? == want,
            || format!("h(0) on w_{j}"),
        )?;
    }
    let (lambda, mu) = (q(1, 2), q(1, 3));
    let mut checked = 0;
    for s in -2..=2 {
        for j in -3..=3 {
            let w = top_level_vector(s, j);
            let jj = Scalar::from_int(j);
            let h = &(&Scalar::from_int(2 * j - 2 * s) + &lambda) - &mu;
            for n in 0..=3 {
                let at = |c: &Scalar, v: TensorVector| if n == 0 { v.scaled(c) } else { TensorVector::zero() };
                let cases = [
                    (Sl2Gen::E, n - s, at(&(&lambda + &jj), top_level_vector(s, j + 1))),
                    (Sl2Gen::F, n + s, at(&(&mu - &jj), top_level_vector(s, j - 1))),
                    (Sl2Gen::H, n, at(&h, w.clone())),
                ];
                for (x, m, want) in cases {
                    let got = sl2_apply(x, m, &plain, &w).map_err(|e| e.to_string())?;
                    ensure(got == want, || format!("{x}({m}) w_{j} at s = {s}"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} top-level identities"))
}

const SHIPPED: [(&str, &str); 6] = [
    ("relations", "relations_full"),
    ("certify", "certify_full"),
    ("character", "character_pi_zero"),
    ("identify", "identify_bar"),
    ("flow-check", "flow_check"),
    ("wakimoto-check", "wakimoto_check"),
];

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs")
}

fn run_cli(command: &str, config: &Path, out: &Path) -> Result<(i32, Vec<u8>), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_critical-fock"))
        .args([command, "--config"])
        .arg(config)
        .arg("--out")
        .arg(out)
        .arg("--quiet")
        .status()
        .map_err(|e| e.to_string())?;
    let bytes = std::fs::read(out).map_err(|e| format!("{}: {e}", out.display()))?;
    Ok((status.code().unwrap_or(-1), bytes))
}

fn end_to_end() -> Outcome {
    let tmp = Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&tmp).map_err(|e| e.to_string())?;
    for (command, name) in SHIPPED {
        let config = configs().join(format!("{name}.json"));
        let (code, first) = run_cli(command, &config, &tmp.join(format!("{name}.1.json")))?;
        let (_, second) = run_cli(command, &config, &tmp.join(format!("{name}.2.json")))?;
        ensure(code == 0, || format!("{command} exited {code}"))?;
        ensure(first == second, || format!("{command} report is not byte-stable"))?;
        let report: JobReport = serde_json::from_slice(&first).map_err(|e| format!("{command}: {e}"))?;
        ensure(report.pass && report.command.name() == command, || {
            format!("{command} report")
        })?;
        if command == "identify" {
            let label = &report.details[0].data["label"];
            ensure(label == "L(-3Λ0+1Λ1)", || format!("identify label {label}"))?;
        }
    }
    let config = configs().join("certify_tilde_zero.json");
    let (code, bytes) = run_cli("certify", &config, &tmp.join("tilde_zero.json"))?;
    ensure(code == 1, || format!("Tilde(0) exited {code}"))?;
    let report: JobReport = serde_json::from_slice(&bytes).map_err(|e| e.to_string())?;
    let witness = report.details[0].witnesses.first().ok_or("no witness")?;
    let replay = tmp.join("replay.json");
    std::fs::write(&replay, serde_json::to_vec_pretty(&witness["replay"]).unwrap()).map_err(|e| e.to_string())?;
    let (code, bytes) = run_cli("replay", &replay, &tmp.join("replay.out.json"))?;
    ensure(code == 0, || format!("replay exited {code}"))?;
    let replayed: JobReport = serde_json::from_slice(&bytes).map_err(|e| e.to_string())?;
    ensure(replayed.details[0].data["confirmed"] == true, || {
        "witness not confirmed".into()
    })?;
    Ok(format!("6 commands, Tilde(0) witness {}", witness["monomial"]))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Clifford anticommutators, weight ≤ 5, |r|,|s| ≤ 9/2", clifford),
        ("superalgebra relations, modes ≤ 7/2, weight ≤ 5", superalgebra),
        (
            "affine sl2 at level -2, modes ≤ 3, degree ≤ 4; closed forms",
            affine_suite,
        ),
        (
            "irreducibility certificates at weight 4; proof constant C",
            certificates,
        ),
        ("Weyl, realized Weyl, Wakimoto and intertwiner, degree ≤ 4", wakimoto),
        ("highest-weight labels, n ≤ 2, |s| ≤ 1, depth 4", highest_weight),
        ("generation of the vacuum sector, degree ≤ 3", generation),
        ("characters of Π(0) and E(1/2,1/3)", characters),
        ("spectral flow and top-level vectors", spectral_flow),
        ("command-line jobs on the shipped configs", end_to_end),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => println!("criterion {:>2}: PASS  {name} [{note}] ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
