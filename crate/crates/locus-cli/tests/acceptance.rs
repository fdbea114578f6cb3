//! Acceptance properties for the engine and the CLI, one verdict line
//! per criterion. Run with `--nocapture` to see the lines as they
//! complete; any failure also panics with the full list at the end.

use locus_core::battery::{self, Battery};
use locus_core::factor;
use locus_core::global::{self, GlobalMode, Mode};
use locus_core::instance::Instance;
use locus_core::localize::{
    certificates_equivalent, closed_form_localize, localize_multi_with,
    replay_certificate, BasePointedSubcat, LocalizationCertificate, LocalizeOutcome,
    SubcatKind,
};
use locus_core::object::{AbObj, SetObj, VectObj};
use locus_core::points::{pts, Point};
use locus_core::ring::{self, RingSpec};
use locus_core::sheaf;
use locus_core::EngineError;
use locus_core::Object;
use std::process::Command;

/// A found certificate with enough context to replay it independently.
struct CertSample {
    instance: Instance,
    object: Object,
    point: Point,
    subcat: BasePointedSubcat,
    cert: LocalizationCertificate,
}

fn err_str<E: std::fmt::Display>(e: E) -> String {
    format!("{e}")
}

// ------------------------------------------------------------------
// 1. The closed-form constructions agree with exhaustive search on
//    every battery point.
// ------------------------------------------------------------------
fn criterion_closed_form_agreement(
    batteries: &[Battery],
    samples: &mut Vec<CertSample>,
) -> Result<String, String> {
    let mut checked = 0usize;
    for b in batteries {
        for (inst, obj) in &b.entries {
            let points = pts(inst, obj).map_err(err_str)?;
            for x in &points {
                let exhaustive = localize_multi_with(
                    inst,
                    obj,
                    std::slice::from_ref(x),
                    &b.subcat,
                    true,
                )
                .map_err(err_str)?;
                let closed = closed_form_localize(inst, obj, x, &b.subcat);
                match (&exhaustive, closed) {
                    (LocalizeOutcome::Found(c), Ok(cc)) => {
                        if !certificates_equivalent(inst, c, &cc).map_err(err_str)? {
                            return Err(format!(
                                "battery {}: {} at {}: closed form {} differs from exhaustive {}",
                                b.name,
                                obj.canonical_name(),
                                x.id_string(),
                                cc.localized.canonical_name(),
                                c.localized.canonical_name()
                            ));
                        }
                        samples.push(CertSample {
                            instance: inst.clone(),
                            object: obj.clone(),
                            point: x.clone(),
                            subcat: b.subcat.clone(),
                            cert: c.clone(),
                        });
                    }
                    (
                        LocalizeOutcome::Absent { .. },
                        Err(EngineError::NoLocalization { .. }),
                    ) => {}
                    (outcome, closed) => {
                        return Err(format!(
                            "battery {}: {} at {}: exhaustive {:?} vs closed form {:?}",
                            b.name,
                            obj.canonical_name(),
                            x.id_string(),
                            std::mem::discriminant(outcome),
                            closed.map(|c| c.localized.canonical_name())
                        ));
                    }
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} point localizations agree"))
}

// ------------------------------------------------------------------
// 2. The four worked examples hold with passing transcripts.
// ------------------------------------------------------------------
fn criterion_worked_examples() -> Result<String, String> {
    // Z/6 at its order-2 element localizes to Z/2
    let z6 = Object::Ab(AbObj::cyclic(6));
    let sub = BasePointedSubcat {
        kind: SubcatKind::PrimeCyclic,
        bound: 24,
    };
    let points = pts(&Instance::Ab, &z6).map_err(err_str)?;
    let x = points
        .iter()
        .find(|p| matches!(p, Point::Element(e) if z6.as_ab().elem_order(e) == 2))
        .ok_or("Z/6 has no order-2 element")?;
    let cert = found_cert(&Instance::Ab, &z6, x, &sub)?;
    if cert.localized.size() != 2 || !cert.transcript.verdict {
        return Err("Z/6 at order-2 did not yield Z/2".into());
    }

    // k^2 over F_2 at a nonzero vector localizes to the line
    let f2 = locus_core::fields::FieldTable::prime(2).map_err(err_str)?;
    let inst_v = Instance::Vect(f2.clone());
    let k2 = Object::Vect(VectObj::new(f2, 2));
    let sub_v = BasePointedSubcat {
        kind: SubcatKind::Spanned,
        bound: 8,
    };
    let points = pts(&inst_v, &k2).map_err(err_str)?;
    let x = points
        .iter()
        .find(|p| matches!(p, Point::Element(e) if e.iter().any(|&c| c != 0)))
        .ok_or("k^2 has no nonzero point")?;
    let cert = found_cert(&inst_v, &k2, x, &sub_v)?;
    if cert.localized.as_vect().dim != 1 || !cert.transcript.verdict {
        return Err("k^2 at a nonzero vector did not yield the line".into());
    }

    // a 3-element set at any point localizes to the singleton
    let s3 = Object::Set(SetObj::canonical(3));
    let sub_s = BasePointedSubcat {
        kind: SubcatKind::SingletonSets,
        bound: 16,
    };
    let points = pts(&Instance::Set, &s3).map_err(err_str)?;
    let cert = found_cert(&Instance::Set, &s3, &points[1], &sub_s)?;
    if cert.localized.size() != 1 || !cert.transcript.verdict {
        return Err("3-element set did not localize to the singleton".into());
    }

    // the ring Z/6 at its characteristic-2 point localizes to Z/2
    let z6r = Object::Ring(ring::build_ring(&RingSpec::ZMod(6), 64).map_err(err_str)?);
    let inst_r = Instance::ring_for(z6r.as_ring());
    let sub_r = BasePointedSubcat {
        kind: SubcatKind::LocalRings,
        bound: 64,
    };
    let points = pts(&inst_r, &z6r).map_err(err_str)?;
    let x = points
        .iter()
        .find(|p| matches!(p, Point::ResidueArrow { base, .. } if base.p == 2 && base.k == 1))
        .ok_or("ring Z/6 has no F_2 point")?;
    let cert = found_cert(&inst_r, &z6r, x, &sub_r)?;
    if cert.localized.size() != 2 || !cert.transcript.verdict {
        return Err("ring Z/6 at the F_2 point did not yield Z/2".into());
    }
    Ok("Z/6, k^2/F_2, 3-set, and ring Z/6 examples verified".into())
}

fn found_cert(
    inst: &Instance,
    obj: &Object,
    x: &Point,
    sub: &BasePointedSubcat,
) -> Result<LocalizationCertificate, String> {
    match localize_multi_with(inst, obj, std::slice::from_ref(x), sub, false)
        .map_err(err_str)?
    {
        LocalizeOutcome::Found(c) => Ok(c),
        other => Err(format!(
            "{} at {}: expected a unique localization, got {:?}",
            obj.canonical_name(),
            x.id_string(),
            std::mem::discriminant(&other)
        )),
    }
}

// ------------------------------------------------------------------
// 3. Every battery ring is affine, and the isomorphism witness
//    replays as a genuine ring isomorphism.
// ------------------------------------------------------------------
fn criterion_ring_affinity(batteries: &[Battery]) -> Result<String, String> {
    let ring_b = battery_named(batteries, "ring")?;
    let mut checked = 0usize;
    for (inst, obj) in &ring_b.entries {
        let report = global::global_object(
            inst,
            obj,
            &ring_b.subcat,
            Mode::Strict,
            GlobalMode::Single,
        )
        .map_err(|e| format!("{}: {e}", obj.canonical_name()))?;
        if !report.affine {
            return Err(format!("{} is not affine", obj.canonical_name()));
        }
        let iso = report
            .iso
            .as_ref()
            .ok_or_else(|| format!("{}: affine without witness", obj.canonical_name()))?;
        let ok = iso.is_valid()
            && factor::is_mono(iso)
            && factor::is_epi(iso)
            && ((iso.dom == report.script_o && &iso.cod == obj)
                || (&iso.dom == obj && iso.cod == report.script_o));
        if !ok {
            return Err(format!(
                "{}: isomorphism witness fails replay",
                obj.canonical_name()
            ));
        }
        checked += 1;
    }
    Ok(format!("{checked} rings affine with replayed witnesses"))
}

// ------------------------------------------------------------------
// 4. The section rings over distinguished opens agree with classical
//    localization for every (ring, element), and the full-open
//    sections cross-check the global object.
// ------------------------------------------------------------------
fn criterion_sheaf_agreement(batteries: &[Battery]) -> Result<String, String> {
    let ring_b = battery_named(batteries, "ring")?;
    let mut compared = 0usize;
    for (inst, obj) in &ring_b.entries {
        let a = obj.as_ring();
        let spec = sheaf::build_spec(a, inst.residue_fields())
            .map_err(|e| format!("{}: {e}", obj.canonical_name()))?;
        for f in 0..a.size() as u32 {
            let cmp = sheaf::compare_distinguished(&spec, f)
                .map_err(|e| format!("{} f={f}: {e}", obj.canonical_name()))?;
            if !cmp.isomorphic {
                return Err(format!(
                    "{} f={f}: section ring {} vs classical {}",
                    obj.canonical_name(),
                    cmp.section_ring.size(),
                    cmp.classical.size()
                ));
            }
            compared += 1;
        }
        let cross = sheaf::crosscheck_global(a, &ring_b.subcat)
            .map_err(|e| format!("{}: {e}", obj.canonical_name()))?;
        if !cross.pass {
            return Err(format!(
                "{}: global object disagrees with full-open sections",
                obj.canonical_name()
            ));
        }
    }
    Ok(format!("{compared} distinguished opens match classical localization"))
}

// ------------------------------------------------------------------
// 5. Every battery vector space is affine with the canonical map's
//    coimage of full dimension.
// ------------------------------------------------------------------
fn criterion_vect_affinity(batteries: &[Battery]) -> Result<String, String> {
    let mut checked = 0usize;
    for b in batteries.iter().filter(|b| b.name.starts_with("vect")) {
        for (inst, obj) in &b.entries {
            if pts(inst, obj).map_err(err_str)?.is_empty() {
                continue;
            }
            let report =
                global::global_object(inst, obj, &b.subcat, Mode::Strict, GlobalMode::Single)
                    .map_err(|e| format!("{}: {e}", obj.canonical_name()))?;
            if !report.affine {
                return Err(format!("{} is not affine", obj.canonical_name()));
            }
            if report.script_o.as_vect().dim != obj.as_vect().dim {
                return Err(format!(
                    "{}: coimage dimension {} != {}",
                    obj.canonical_name(),
                    report.script_o.as_vect().dim,
                    obj.as_vect().dim
                ));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} spaces affine with full-dimension coimage"))
}

// ------------------------------------------------------------------
// 6. Negative control: Z/4 is not affine. Permissive mode skips
//    exactly the identity and the two order-4 points; strict mode
//    errors naming them.
// ------------------------------------------------------------------
fn criterion_negative_control() -> Result<String, String> {
    let z4 = Object::Ab(AbObj::cyclic(4));
    let sub = BasePointedSubcat {
        kind: SubcatKind::PrimeCyclic,
        bound: 24,
    };
    let points = pts(&Instance::Ab, &z4).map_err(err_str)?;
    let expected: Vec<String> = points
        .iter()
        .filter(|p| {
            let Point::Element(e) = p else { return false };
            let ord = z4.as_ab().elem_order(e);
            ord == 1 || ord == 4
        })
        .map(|p| format!("{{{}}}", p.id_string()))
        .collect();
    if expected.len() != 3 {
        return Err(format!("expected 3 failing points, found {}", expected.len()));
    }
    let report = global::global_object(
        &Instance::Ab,
        &z4,
        &sub,
        Mode::Permissive,
        GlobalMode::Single,
    )
    .map_err(err_str)?;
    if report.affine {
        return Err("Z/4 reported affine".into());
    }
    if report.skipped_points != expected {
        return Err(format!(
            "skipped {:?}, expected {:?}",
            report.skipped_points, expected
        ));
    }
    match global::global_object(&Instance::Ab, &z4, &sub, Mode::Strict, GlobalMode::Single) {
        Err(EngineError::NoLocalization { point, .. }) => {
            let names_order_4 = points.iter().any(|p| {
                let Point::Element(e) = p else { return false };
                z4.as_ab().elem_order(e) == 4 && point.contains(&p.id_string())
            });
            if !names_order_4 {
                return Err(format!("strict error names no order-4 point: {point}"));
            }
        }
        other => {
            return Err(format!(
                "strict mode: expected a no-localization error, got {:?}",
                other.map(|r| r.affine)
            ))
        }
    }
    Ok("Z/4 not affine; identity and order-4 points skipped; strict errors".into())
}

// ------------------------------------------------------------------
// 7. The coproduct and inclusion-ordered colimit readings both
//    compute on small sets and spaces, and at least one object
//    separates them with explicit objects.
// ------------------------------------------------------------------
fn criterion_colimit_readings() -> Result<String, String> {
    let mut runs = 0usize;
    let mut separated = false;
    let sub_s = BasePointedSubcat {
        kind: SubcatKind::SingletonSets,
        bound: 16,
    };
    let f2 = locus_core::fields::FieldTable::prime(2).map_err(err_str)?;
    let sub_v = BasePointedSubcat {
        kind: SubcatKind::Spanned,
        bound: 8,
    };
    let mut cases: Vec<(Instance, Object, BasePointedSubcat)> = (1..=3usize)
        .map(|n| {
            (
                Instance::Set,
                Object::Set(SetObj::canonical(n)),
                sub_s.clone(),
            )
        })
        .collect();
    for d in 0..=2u32 {
        cases.push((
            Instance::Vect(f2.clone()),
            Object::Vect(VectObj::new(f2.clone(), d)),
            sub_v.clone(),
        ));
    }
    for (inst, obj, sub) in &cases {
        let report = global::lemma_compare(inst, obj, sub, 3)
            .map_err(|e| format!("{}: {e}", obj.canonical_name()))?;
        let colimit = report.colimit_side.as_ref().ok_or_else(|| {
            format!(
                "{}: no colimit reading ({} missing connections)",
                obj.canonical_name(),
                report.missing_connections.len()
            )
        })?;
        if report.isomorphic.is_none() {
            return Err(format!("{}: no comparison verdict", obj.canonical_name()));
        }
        if report.isomorphic == Some(false)
            && report.coproduct_side.size() != colimit.size()
        {
            separated = true;
        }
        runs += 1;
    }
    if !separated {
        return Err("no object separates the two readings".into());
    }
    Ok(format!("{runs} objects computed under both readings, readings separated"))
}

// ------------------------------------------------------------------
// 8. Sampled certificates replay under independent recounting.
// ------------------------------------------------------------------
fn criterion_certificate_replay(samples: &[CertSample]) -> Result<String, String> {
    if samples.is_empty() {
        return Err("no certificates collected".into());
    }
    // fixed linear-congruential stream so the sample is reproducible
    let mut state: u64 = 0x9E3779B97F4A7C15;
    let mut replayed = 0usize;
    for _ in 0..100 {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let s = &samples[(state >> 33) as usize % samples.len()];
        let ok = replay_certificate(
            &s.instance,
            &s.object,
            std::slice::from_ref(&s.point),
            &s.subcat,
            &s.cert,
        )
        .map_err(err_str)?;
        if !ok {
            return Err(format!(
                "certificate for {} at {} fails replay",
                s.object.canonical_name(),
                s.point.id_string()
            ));
        }
        replayed += 1;
    }
    Ok(format!("{replayed} sampled certificates replayed"))
}

// ------------------------------------------------------------------
// 9. The CLI is deterministic: identical jobs render byte-identical
//    payloads across runs.
// ------------------------------------------------------------------
fn criterion_determinism(batteries: &[Battery]) -> Result<String, String> {
    // the full battery, twice, serialized
    let mut renders: Vec<String> = Vec::new();
    for _ in 0..2 {
        let mut buf = String::new();
        for b in batteries {
            for (inst, obj) in &b.entries {
                for x in &pts(inst, obj).map_err(err_str)? {
                    let outcome = localize_multi_with(
                        inst,
                        obj,
                        std::slice::from_ref(x),
                        &b.subcat,
                        true,
                    )
                    .map_err(err_str)?;
                    buf.push_str(&serde_json::to_string(&outcome).map_err(err_str)?);
                    buf.push('\n');
                }
            }
        }
        renders.push(buf);
    }
    if renders[0] != renders[1] {
        return Err("battery localization reports differ across runs".into());
    }
    let battery_lines = renders[0].lines().count();

    let jobs: &[(&str, &str)] = &[
        (
            "ab-localize.json",
            r#"{"category":{"kind":"ab"},"object":{"ab":{"orders":[6]}},
                "subcategory":{"kind":"prime-cyclic","bound":24},
                "query":"localize","query_params":{"point":3}}"#,
        ),
        (
            "ring-affine.json",
            r#"{"category":{"kind":"ring"},"object":{"ring":{"ZMod":6}},
                "subcategory":{"kind":"local-rings","bound":16},
                "query":"affine"}"#,
        ),
        (
            "set-scheme.json",
            r#"{"category":{"kind":"set"},"object":{"set":{"size":3}},
                "subcategory":{"kind":"singleton-sets","bound":16},
                "query":"scheme"}"#,
        ),
        (
            "set-lemma.json",
            r#"{"category":{"kind":"set"},"object":{"set":{"size":2}},
                "subcategory":{"kind":"singleton-sets","bound":16},
                "query":"lemma"}"#,
        ),
        (
            "ring-sheaf.json",
            r#"{"category":{"kind":"ring"},"object":{"ring":{"ZMod":6}},
                "subcategory":{"kind":"local-rings","bound":16},
                "query":"sheaf-compare","query_params":{"f":3}}"#,
        ),
        (
            "vect-multi.json",
            r#"{"category":{"kind":"vect","field":2},"object":{"vect":{"dim":2}},
                "subcategory":{"kind":"spanned","bound":8},
                "query":"localize-multi","query_params":{"points":[1,2]}}"#,
        ),
    ];
    let dir = std::env::temp_dir().join("locus-acceptance-jobs");
    std::fs::create_dir_all(&dir).map_err(err_str)?;
    let bin = env!("CARGO_BIN_EXE_locus");
    let mut compared = 0usize;
    for (name, body) in jobs {
        let path = dir.join(name);
        std::fs::write(&path, body).map_err(err_str)?;
        let mut payloads = Vec::new();
        for _ in 0..2 {
            let out = Command::new(bin)
                .arg("run")
                .arg(&path)
                .output()
                .map_err(err_str)?;
            if !out.status.success() {
                return Err(format!(
                    "{name}: exit {:?}: {}",
                    out.status.code(),
                    String::from_utf8_lossy(&out.stderr)
                ));
            }
            let value: serde_json::Value =
                serde_json::from_slice(&out.stdout).map_err(err_str)?;
            let payload = value
                .get("payload")
                .ok_or_else(|| format!("{name}: report has no payload"))?;
            payloads.push(serde_json::to_string(payload).map_err(err_str)?);
        }
        if payloads[0] != payloads[1] {
            return Err(format!("{name}: payloads differ across runs"));
        }
        compared += 1;
    }
    Ok(format!(
        "{battery_lines} battery reports and {compared} jobs byte-identical across runs"
    ))
}

fn battery_named<'a>(batteries: &'a [Battery], name: &str) -> Result<&'a Battery, String> {
    batteries
        .iter()
        .find(|b| b.name == name)
        .ok_or_else(|| format!("no `{name}` battery"))
}

#[test]
fn acceptance_criteria() {
    let batteries = battery::shipped().expect("batteries build");
    let mut samples: Vec<CertSample> = Vec::new();
    let mut failures: Vec<String> = Vec::new();

    let mut run = |n: usize, name: &str, result: Result<String, String>| match result {
        Ok(detail) => println!("criterion {n} ({name}): pass — {detail}"),
        Err(reason) => {
            println!("criterion {n} ({name}): FAIL — {reason}");
            failures.push(format!("criterion {n} ({name}): {reason}"));
        }
    };

    run(
        1,
        "closed-form vs exhaustive",
        criterion_closed_form_agreement(&batteries, &mut samples),
    );
    run(2, "worked examples", criterion_worked_examples());
    run(3, "ring affinity", criterion_ring_affinity(&batteries));
    run(4, "sheaf agreement", criterion_sheaf_agreement(&batteries));
    run(5, "vector-space affinity", criterion_vect_affinity(&batteries));
    run(6, "negative control Z/4", criterion_negative_control());
    run(7, "colimit readings", criterion_colimit_readings());
    run(8, "certificate replay", criterion_certificate_replay(&samples));
    run(9, "determinism", criterion_determinism(&batteries));

    assert!(failures.is_empty(), "failed criteria:\n{}", failures.join("\n"));
}
