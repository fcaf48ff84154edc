use serde::Serialize;
use serde_json::{json, Value};

use drinfeld_core::algebra::display::fmt_poly;
use drinfeld_core::algebra::{enumerate_primes, Field, FiniteField, Fq, Poly, PolyRing, PrimePoly, RationalField};
use drinfeld_core::algebra::FqElem;
use drinfeld_core::classfield::{claim_check_5_1, hayes_classify, nonsurjectivity_witness, quad_subext};
use drinfeld_core::drinfeld::{display_module, module_over_f, reduce_mod, GlobalModule};
use drinfeld_core::error::Error;
use drinfeld_core::frobenius::{check_charpoly, frob_charpoly, frob_matrix_mod_l};
use drinfeld_core::groupverify::{
    verify_gl2_f2, verify_lemma_5_5, verify_lemma_6_1, verify_prop_5_6_level2, verify_prop_5_6_trace_step,
};
use drinfeld_core::image::certify_mod_l_surjective;
use drinfeld_core::parse::{parse_element, parse_module, parse_poly};
use drinfeld_core::splitting::splitting_field_degree;
use drinfeld_core::suite::run_battery;
use drinfeld_core::torsion::torsion_points_capped;

use crate::{Command, Failure, Format, Opts, Outcome};

type Out = Result<Outcome, Failure>;

fn to_value<T: Serialize>(x: &T) -> Result<Value, Failure> {
    serde_json::to_value(x).map_err(|e| Failure::Compute(e.to_string()))
}

fn plain(payload: Value) -> Outcome {
    Outcome {
        payload,
        table: None,
        acceptance_failed: false,
    }
}

fn field(o: &Opts) -> Result<(Fq, RationalField), Failure> {
    let fq = Fq::with_order(o.q.unwrap_or(3))?;
    let f = RationalField::new(&fq);
    Ok((fq, f))
}

fn module(o: &Opts, f: &RationalField) -> Result<GlobalModule, Failure> {
    match (&o.phi, &o.g1, &o.g2) {
        (Some(p), None, None) => Ok(parse_module(f, p)?),
        (None, g1, Some(g2)) => {
            let g1 = match g1 {
                Some(t) => parse_element(f, t).map_err(|e| Failure::Config(format!("--g1: {e}")))?,
                None => f.zero(),
            };
            let g2 = parse_element(f, g2).map_err(|e| Failure::Config(format!("--g2: {e}")))?;
            Ok(module_over_f(f, vec![g1, g2])?)
        }
        (Some(_), _, _) => Err(Failure::Config("give either --phi or --g1/--g2, not both".into())),
        (None, _, None) => Err(Failure::Config("a module is required: --phi or --g2 (and --g1)".into())),
    }
}

fn poly_arg(fq: &Fq, text: Option<&String>, flag: &str) -> Result<Poly<FqElem>, Failure> {
    let text = text.ok_or_else(|| Failure::Config(format!("--{flag} is required")))?;
    Ok(parse_poly(fq, text)?)
}

fn prime_arg(fq: &Fq, text: Option<&String>, flag: &str) -> Result<PrimePoly, Failure> {
    let p = poly_arg(fq, text, flag)?;
    PrimePoly::new(fq, fq.pmonic(&p)).map_err(|e| Failure::Config(format!("--{flag}: {e}")))
}

/// The modulus `l` for commands that take one: `--modulus`, falling back to `--prime`.
fn modulus_l(fq: &Fq, o: &Opts) -> Result<PrimePoly, Failure> {
    if o.modulus.is_some() {
        prime_arg(fq, o.modulus.as_ref(), "modulus")
    } else {
        prime_arg(fq, o.prime.as_ref(), "modulus")
    }
}

pub fn supports_csv(cmd: &Command) -> bool {
    matches!(cmd, Command::Image(_) | Command::Frobenius(_) | Command::Suite(_))
}

pub fn dispatch(cmd: &Command, o: &Opts) -> Out {
    if o.format == Format::Csv && !supports_csv(cmd) {
        return Err(Failure::Config("--format csv is only available for image, frobenius and suite".into()));
    }
    match cmd {
        Command::Torsion(_) => torsion(o),
        Command::GaloisOrder(_) => galois_order(o),
        Command::Image(_) => image(o),
        Command::Entangle(_) => entangle(o),
        Command::Witness(_) => witness(o),
        Command::VerifyGroups(_) => verify_groups(o),
        Command::Frobenius(_) => frobenius(o),
        Command::Suite(_) => suite(o),
    }
}

fn torsion(o: &Opts) -> Out {
    let (fq, f) = field(o)?;
    let phi = module(o, &f)?;
    let p = prime_arg(&fq, o.prime.as_ref(), "prime")?;
    let a = fq.pmonic(&poly_arg(&fq, o.modulus.as_ref(), "modulus")?);
    let red = reduce_mod(&phi, &p)?;
    let tm = torsion_points_capped(&red, &a, 96)?;
    let expected = fq.order().pow((phi.rank() * a.degree().unwrap_or(0)) as u32);
    // coordinates over F_q in the ambient field's power basis
    let fmt_pt = |x: &Vec<FqElem>| x.iter().map(|c| fq.format(*c)).collect::<Vec<_>>().join(" ");
    Ok(plain(json!({
        "module": display_module(&phi),
        "prime": p.display(&fq),
        "modulus": fmt_poly(&fq, &a, "T"),
        "extensionDegree": tm.ext_degree,
        "ambientDegree": tm.ambient.degree(),
        "points": tm.points.len(),
        "expected": expected,
        "matches": tm.points.len() == expected,
        "basis": tm.basis.iter().map(fmt_pt).collect::<Vec<_>>(),
    })))
}

fn galois_order(o: &Opts) -> Out {
    let (fq, f) = field(o)?;
    let phi = module(o, &f)?;
    let l = modulus_l(&fq, o)?;
    let rep = splitting_field_degree(&phi, l.poly())?;
    Ok(plain(json!({
        "module": display_module(&phi),
        "modulus": l.display(&fq),
        "total": rep.degree,
        "steps": to_value(&rep.steps)?,
    })))
}

fn image(o: &Opts) -> Out {
    let (fq, f) = field(o)?;
    let phi = module(o, &f)?;
    let l = modulus_l(&fq, o)?;
    let cert = certify_mod_l_surjective(&phi, &l, o.max_deg.unwrap_or(6))?;
    let mut table = vec![["prime", "a", "mu", "trace", "det", "pattern"].map(String::from).to_vec()];
    for s in &cert.sampled {
        let pattern = s.pattern.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ");
        table.push(vec![
            s.prime.clone(),
            s.a.clone(),
            s.mu.to_string(),
            s.trace.to_string(),
            s.det.to_string(),
            pattern,
        ]);
    }
    Ok(Outcome {
        payload: to_value(&cert)?,
        table: Some(table),
        acceptance_failed: false,
    })
}

fn entangle(o: &Opts) -> Out {
    let (fq, f) = field(o)?;
    let phi = module(o, &f)?;
    let moduli: Vec<PrimePoly> = if o.modulus.is_some() || o.prime.is_some() {
        vec![modulus_l(&fq, o)?]
    } else {
        fq.all().map(|c| PrimePoly::linear(&fq, c)).collect()
    };
    let mut rows = Vec::new();
    for l in &moduli {
        let row = match quad_subext(&phi, l) {
            Ok(d) => json!({
                "modulus": l.display(&fq),
                "descriptor": d.display(&fq),
                "provenance": d.provenance,
                "classification": to_value(&hayes_classify(&fq, &d))?,
            }),
            Err(e @ (Error::ImageTooSmall { .. } | Error::SizeLimit(_) | Error::BadReduction { .. })) => {
                json!({ "modulus": l.display(&fq), "note": e.to_string() })
            }
            Err(e) => return Err(e.into()),
        };
        rows.push(row);
    }
    let claim = if fq.order() == 3 && moduli.len() == 3 {
        Some(to_value(&claim_check_5_1(&phi)?)?)
    } else {
        None
    };
    Ok(plain(json!({
        "module": display_module(&phi),
        "subextensions": rows,
        "detVersusCarlitz": claim,
    })))
}

fn witness(o: &Opts) -> Out {
    let (_, f) = field(o)?;
    let phi = module(o, &f)?;
    let w = nonsurjectivity_witness(&phi)?;
    Ok(plain(json!({ "module": display_module(&phi), "witness": to_value(&w)? })))
}

fn verify_groups(o: &Opts) -> Out {
    let lemma = o
        .lemma
        .as_deref()
        .ok_or_else(|| Failure::Config("--lemma is required: gl2f2, 5.5, 5.6 or 6.1".into()))?;
    let payload = match lemma {
        "gl2f2" => to_value(&verify_gl2_f2()?)?,
        "5.5" => to_value(&verify_lemma_5_5())?,
        "5.6" => json!({
            "traceStep": to_value(&verify_prop_5_6_trace_step())?,
            "level2": to_value(&verify_prop_5_6_level2(o.trials.unwrap_or(1000), o.seed)?)?,
        }),
        "6.1" => {
            let qs = match o.q {
                Some(q) => vec![q],
                None => vec![4, 8, 16],
            };
            let reports = qs
                .into_iter()
                .map(|q| verify_lemma_6_1(q, o.seed).map_err(Failure::from).and_then(|r| to_value(&r)))
                .collect::<Result<Vec<_>, _>>()?;
            Value::Array(reports)
        }
        other => return Err(Failure::Config(format!("unknown --lemma {other}: use gl2f2, 5.5, 5.6 or 6.1"))),
    };
    Ok(plain(payload))
}

fn frobenius(o: &Opts) -> Out {
    let (fq, f) = field(o)?;
    let phi = module(o, &f)?;
    let primes = match &o.prime {
        Some(_) => vec![prime_arg(&fq, o.prime.as_ref(), "prime")?],
        None => enumerate_primes(&fq, o.max_deg.unwrap_or(4)),
    };
    let l = match &o.modulus {
        Some(_) => Some(prime_arg(&fq, o.modulus.as_ref(), "modulus")?),
        None => None,
    };
    let mut header = vec!["prime", "a", "mu", "identity"];
    if l.is_some() {
        header.extend(["trace", "traceMatches"]);
    }
    let mut table = vec![header.into_iter().map(String::from).collect::<Vec<_>>()];
    let (mut rows, mut bad) = (Vec::new(), Vec::new());
    for p in primes {
        let red = match reduce_mod(&phi, &p) {
            Ok(r) => r,
            Err(Error::BadReduction { .. }) => {
                bad.push(p.display(&fq));
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let cp = frob_charpoly(&red)?;
        let identity = check_charpoly(&red, &cp);
        let a = fmt_poly(&fq, &cp.a, "T");
        let mut row = json!({ "prime": p.display(&fq), "a": a, "mu": fq.format(cp.mu), "identity": identity });
        let mut line = vec![p.display(&fq), a, fq.format(cp.mu), identity.to_string()];
        if let Some(l) = l.as_ref().filter(|l| **l != p) {
            let tr = frob_matrix_mod_l(&red, l)?.matrix.trace(&fq);
            let matches = tr == fq.prem(&cp.a, l.poly()).unwrap();
            row["trace"] = json!(fmt_poly(&fq, &tr, "T"));
            row["traceMatches"] = json!(matches);
            line.extend([fmt_poly(&fq, &tr, "T"), matches.to_string()]);
        } else if l.is_some() {
            line.extend([String::new(), String::new()]);
        }
        rows.push(row);
        table.push(line);
    }
    Ok(Outcome {
        payload: json!({
            "module": display_module(&phi),
            "convention": "pi^2 - a pi + mu P = 0 with P monic",
            "modulus": l.map(|l| l.display(&fq)),
            "primes": rows,
            "badPrimes": bad,
        }),
        table: Some(table),
        acceptance_failed: false,
    })
}

fn suite(o: &Opts) -> Out {
    let results = run_battery(o.seed);
    let mut table = vec![["criterion", "title", "passed", "detail"].map(String::from).to_vec()];
    for r in &results {
        eprintln!(
            "{} criterion {:>2}: {} [{:.2}s]",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.title,
            r.elapsed.as_secs_f64()
        );
        table.push(vec![r.id.to_string(), r.title.clone(), r.passed.to_string(), r.detail.clone()]);
    }
    Ok(Outcome {
        payload: json!({ "seed": o.seed, "criteria": to_value(&results)? }),
        table: Some(table),
        acceptance_failed: results.iter().any(|r| !r.passed),
    })
}
