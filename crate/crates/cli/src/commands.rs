use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use chamberforge::chains::{aut_group_shape, cohomology_report, stabilizer_order};
use chamberforge::coxvinberg::{base_map_matrix, classify_all, cox_data, destabilizer};
use chamberforge::fans::{
    convex_support, is_normal_fan, projection_closure_check, support_equals_chamber, validate, validate_in, weyl_fan,
};
use chamberforge::moduli::{
    canonical_fan, kgl_fan, losev_manin_type, orbit_poset, ordered_set_partitions, sigma_stable, OrbitPoset,
};
use chamberforge::rational::{format_q, format_qvec, parse_qvec, QVec};
use chamberforge::rootdata::{gl, pgl, preset, preset_names, RootDatum};
use chamberforge::vinberg::{default_rho, essential_pairs, is_essential, orbit_git_status, vinberg_face, EssentialPair};
use chamberforge::{Error, GitWitness, SplittingType, StackyFan};
use serde_json::{json, Value};

use crate::args::*;
use crate::{CliError, Output};

type Res = Result<Output, CliError>;

pub fn run(cli: &Cli) -> Res {
    match &cli.command {
        Command::Rootdata(RootdataCmd::Show(g)) => rootdata_show(g),
        Command::Rootdata(RootdataCmd::List) => Ok(Output {
            json: json!(preset_names()),
            text: preset_names().join("\n"),
        }),
        Command::Fan(c) => fan_cmd(c),
        Command::Stability(StabilityCmd::Classify(a)) | Command::Moduli(ModuliCmd::Classify(a)) => classify(a),
        Command::Cohomology(a) => cohomology(a),
        Command::Aut(a) => aut(a),
        Command::Vinberg(c) => vinberg_cmd(c),
        Command::Cox(c) => cox_cmd(c),
        Command::Moduli(c) => moduli_cmd(c),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load_group(g: &GroupArgs) -> Result<RootDatum, CliError> {
    match (&g.preset, &g.root_datum) {
        (Some(name), _) => Ok(preset(name)?),
        (None, Some(path)) => {
            let text = read(path)?;
            // Also accept the envelope printed by `rootdata show --json`.
            let inner = serde_json::from_str::<Value>(&text)
                .ok()
                .and_then(|mut v| v.get_mut("root_datum").map(Value::take));
            match inner {
                Some(v) => Ok(RootDatum::from_json_str(&v.to_string())?),
                None => Ok(RootDatum::from_json_str(&text)?),
            }
        }
        (None, None) => Err(CliError::Usage("one of --preset or --root-datum is required".into())),
    }
}

fn optional_group(g: &GroupArgs) -> Result<Option<RootDatum>, CliError> {
    if g.preset.is_none() && g.root_datum.is_none() {
        Ok(None)
    } else {
        load_group(g).map(Some)
    }
}

fn load_fan(path: &Path, rank: Option<usize>) -> Result<StackyFan, CliError> {
    Ok(StackyFan::from_json_str(&read(path)?, rank)?)
}

fn parse_type(s: &str, rank: usize) -> Result<SplittingType, CliError> {
    let entries: Vec<Vec<i64>> =
        serde_json::from_str(s).map_err(|e| CliError::Usage(format!("--type must be a JSON list of integer vectors: {e}")))?;
    let beta = SplittingType::new(entries);
    beta.check_rank(rank)?;
    Ok(beta)
}

fn parse_list(s: &str, what: &str) -> Result<Vec<usize>, CliError> {
    let t = s.trim().trim_start_matches('[').trim_end_matches(']');
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut v = t
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("{what}: bad index {x:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

fn parse_rho(rd: &RootDatum, r: &RhoArg) -> Result<QVec, CliError> {
    match &r.rho {
        None => Ok(default_rho(rd)),
        Some(s) => {
            let v = parse_qvec(s).map_err(|e| CliError::Usage(format!("--rho: {e}")))?;
            if v.len() != rd.rank {
                return Err(Error::DimensionMismatch { expected: rd.rank, found: v.len() }.into());
            }
            Ok(v)
        }
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn fmt_ivec(v: &[i64]) -> String {
    let inner: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", inner.join(", "))
}

fn fmt_set(v: &[usize]) -> String {
    let inner: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn rootdata_show(g: &GroupArgs) -> Res {
    let rd = load_group(g)?;
    let order = rd.weyl_group()?.len();
    let cartan = rd.cartan_matrix();
    let mut text = format!("{} (rank {}, semisimple rank {})\n", rd.name, rd.rank, rd.num_simple());
    for (i, (a, c)) in rd.simple_roots.iter().zip(&rd.simple_coroots).enumerate() {
        let _ = writeln!(text, "  α_{i} = {}   α_{i}^∨ = {}", fmt_ivec(a), fmt_ivec(c));
    }
    text.push_str("Cartan matrix:\n");
    for row in &cartan {
        let _ = writeln!(text, "  {}", fmt_ivec(row));
    }
    let _ = writeln!(text, "|W| = {order}, |Φ+| = {}, dim g = {}", rd.positive_roots().len(), rd.dim_g());
    Ok(Output {
        json: json!({
            "root_datum": rd.to_json_value(),
            "cartan_matrix": cartan,
            "weyl_order": order,
            "positive_roots": rd.positive_roots(),
            "dim_g": rd.dim_g(),
        }),
        text,
    })
}

fn fan_text(fan: &StackyFan) -> String {
    let mut s = String::new();
    for (k, r) in fan.rays.iter().enumerate() {
        let _ = writeln!(s, "ray {k}: {}", fmt_ivec(r));
    }
    for c in fan.maximal_cones() {
        let _ = writeln!(s, "cone {}", fmt_set(&c));
    }
    s
}

fn fan_cmd(c: &FanCmd) -> Res {
    match c {
        FanCmd::Validate(a) => {
            let rd = optional_group(&a.group)?;
            let fan = load_fan(&a.fan, rd.as_ref().map(|r| r.rank))?;
            let rep = match &rd {
                Some(rd) => validate_in(rd, &fan),
                None => validate(&fan),
            };
            let mut text = format!("valid: {}\n", rep.valid);
            if let Some(cs) = rep.chamber_supported {
                let _ = writeln!(text, "chamber supported: {cs}");
            }
            for v in &rep.violations {
                let _ = writeln!(text, "violation: {}", serde_json::to_string(v).expect("serializable"));
            }
            Ok(Output { json: to_value(&rep), text })
        }
        FanCmd::Weyl(a) => {
            let rd = load_group(&a.group)?;
            let fan = load_fan(&a.fan, Some(rd.rank))?;
            let out = weyl_fan(&rd, &fan)?;
            Ok(Output { json: to_value(&out.to_json()), text: fan_text(&out) })
        }
        FanCmd::Normal(a) => {
            let rd = optional_group(&a.group)?;
            let fan = load_fan(&a.fan, rd.as_ref().map(|r| r.rank))?;
            let cert = is_normal_fan(&fan)?;
            let text = match &cert {
                Some(c) => format!("normal: true\nheights: {}\n", format_qvec(&c.heights)),
                None => "normal: false\n".to_string(),
            };
            Ok(Output { json: json!({ "normal": cert.is_some(), "certificate": cert }), text })
        }
        FanCmd::Support(a) => {
            let rd = load_group(&a.group)?;
            let fan = load_fan(&a.fan, Some(rd.rank))?;
            let equals_chamber = support_equals_chamber(&rd, &fan);
            let convex = match convex_support(&fan) {
                Ok(()) => true,
                Err(Error::NonConvexSupport(_)) => false,
                Err(e) => return Err(e.into()),
            };
            let proj = projection_closure_check(&rd, &fan);
            let text = format!(
                "convex support: {convex}\nsupport equals chamber: {equals_chamber}\nprojection closure: {} ({} points)\n",
                proj.passed, proj.points_checked
            );
            Ok(Output {
                json: json!({ "convex": convex, "support_equals_chamber": equals_chamber, "projection": proj }),
                text,
            })
        }
    }
}

fn classify(a: &ClassifyArgs) -> Res {
    let rd = load_group(&a.fan.group)?;
    let fan = load_fan(&a.fan.fan, Some(rd.rank))?;
    let rep = validate_in(&rd, &fan);
    if !rep.valid {
        return Err(Error::InvalidFan("fan fails validation; run `fan validate` for details".into()).into());
    }
    if rep.chamber_supported != Some(true) {
        return Err(Error::Precondition("fan is not supported in the positive chamber".into()).into());
    }
    let beta = parse_type(&a.beta, rd.rank)?;
    let v = sigma_stable(&rd, &fan, &beta)?;
    let mut text = format!("{} ({})\n", if v.stable { "stable" } else { "unstable" }, v.reason);
    if let Some(w) = &v.witness {
        let _ = writeln!(text, "w = s{:?}, cone {}", w.weyl.word, fmt_set(&w.cone));
    }
    Ok(Output { json: to_value(&v), text })
}

fn cohomology(a: &TypeArgs) -> Res {
    let rd = load_group(&a.group)?;
    let beta = parse_type(&a.beta, rd.rank)?;
    let r = cohomology_report(&rd, &beta)?;
    let text = format!(
        "dim g = {}\nt0 = {}\nh0(ad E) = {}\nh1(ad E) = {}\nt1 = {}\ncommon chamber: {}\n",
        r.dim_g, r.t0, r.h0_ad, r.h1_ad, r.t1, r.common_chamber
    );
    Ok(Output { json: to_value(&r), text })
}

fn aut(a: &TypeArgs) -> Res {
    let rd = load_group(&a.group)?;
    let beta = parse_type(&a.beta, rd.rank)?;
    let shape = aut_group_shape(&rd, &beta)?;
    let stab = stabilizer_order(&rd, &beta)?;
    let text = format!(
        "dim Aut = {}\n|Φ_L| = {}, |U+| = {}, |U-| = {}\nstabilizer order: {stab}\n",
        shape.dimension,
        shape.levi_roots.len(),
        shape.uplus_roots.len(),
        shape.uminus_roots.len()
    );
    Ok(Output { json: json!({ "shape": shape, "stabilizer_order": stab }), text })
}

fn vinberg_cmd(c: &VinbergCmd) -> Res {
    match c {
        VinbergCmd::Faces { group, essential_only } => {
            let rd = load_group(group)?;
            let pairs: Vec<EssentialPair> =
                essential_pairs(&rd).into_iter().filter(|p| p.essential || !essential_only).collect();
            let mut faces = Vec::new();
            let mut text = String::new();
            for p in &pairs {
                let f = vinberg_face(&rd, &p.i, &p.j);
                let _ = writeln!(
                    text,
                    "I={} J={} essential={} dim={}",
                    fmt_set(&p.i),
                    fmt_set(&p.j),
                    p.essential,
                    f.cone().dim()
                );
                faces.push(f);
            }
            Ok(Output { json: to_value(&faces), text })
        }
        VinbergCmd::Git { group, rho, i_set, j_set } => {
            let rd = load_group(group)?;
            let rho = parse_rho(&rd, rho)?;
            let pairs: Vec<EssentialPair> = match (i_set, j_set) {
                (Some(i), Some(j)) => {
                    let (i, j) = (parse_list(i, "--i")?, parse_list(j, "--j")?);
                    let essential = is_essential(&rd, &i, &j);
                    vec![EssentialPair { i, j, essential }]
                }
                _ => essential_pairs(&rd).into_iter().filter(|p| p.essential).collect(),
            };
            let mut rows = Vec::new();
            let mut text = format!("ρ = {}\n", format_qvec(&rho));
            for p in pairs {
                let v = orbit_git_status(&rd, &p, &rho)?;
                let wit = v.witness.as_ref().map(|w| format_qvec(w)).unwrap_or_else(|| "-".into());
                let _ = writeln!(text, "I={} J={}: {} (witness {wit})", fmt_set(&p.i), fmt_set(&p.j), v.status);
                rows.push(json!({ "pair": p, "verdict": v }));
            }
            Ok(Output { json: json!({ "rho": rho.iter().map(format_q).collect::<Vec<_>>(), "orbits": rows }), text })
        }
    }
}

fn cox_cmd(c: &CoxCmd) -> Res {
    match c {
        CoxCmd::Classify { fan, rho } => {
            let rd = load_group(&fan.group)?;
            let f = load_fan(&fan.fan, Some(rd.rank))?;
            let rho = parse_rho(&rd, rho)?;
            let cox = cox_data(&rd, &f)?;
            let base = base_map_matrix(&rd, &f)?;
            let verdicts = classify_all(&rd, &f, &rho)?;
            let mut text = format!(
                "kernel rank {}, torsion {:?}\nbase map rows: {}\n",
                cox.kernel_rank,
                cox.kernel_invariant_factors,
                base.iter().map(|r| fmt_ivec(r)).collect::<Vec<_>>().join(" ")
            );
            for v in &verdicts {
                let wit = match &v.witness {
                    GitWitness::None => String::new(),
                    GitWitness::Destabilizer { index, ell } => format!(" via -α_{index}^∨ = ℓ·β, ℓ = {}", format_qvec(ell)),
                    GitWitness::Cocharacter { lambda, .. } => format!(" via λ = {}", format_qvec(lambda)),
                };
                let _ = writeln!(
                    text,
                    "H={} I={} J={}: {}{wit}",
                    fmt_set(&v.stratum.h),
                    fmt_set(&v.stratum.i),
                    fmt_set(&v.stratum.j),
                    v.status
                );
            }
            Ok(Output { json: json!({ "cox": cox, "base_map": base, "verdicts": verdicts }), text })
        }
        CoxCmd::Destabilize { fan, index, h_set } => {
            let rd = load_group(&fan.group)?;
            let f = load_fan(&fan.fan, Some(rd.rank))?;
            let h = parse_list(h_set, "--h")?;
            let d = destabilizer(&rd, &f, *index, &h)?;
            let text = serde_json::to_string(&d).expect("serializable");
            Ok(Output { json: to_value(&d), text })
        }
    }
}

fn poset_text(p: &OrbitPoset) -> String {
    let mut s = String::new();
    for n in &p.nodes {
        let _ = writeln!(
            s,
            "{} codim {} stabilizer {}{}",
            n.id,
            n.codim,
            n.stabilizer_order,
            n.label.as_ref().map(|l| format!(" {l}")).unwrap_or_default()
        );
    }
    let _ = writeln!(s, "{} orbits, {} closure edges", p.nodes.len(), p.edges.len());
    s
}

fn moduli_cmd(c: &ModuliCmd) -> Res {
    match c {
        ModuliCmd::Classify(a) => classify(a),
        ModuliCmd::Orbits { group, fan, kgl, dot, format } => {
            let (rd, f) = match kgl {
                Some(r) => {
                    let given = optional_group(group)?;
                    let r = match (*r, &given) {
                        (0, Some(rd)) => rd.rank,
                        (0, None) => return Err(CliError::Usage("--kgl needs R or a GL_r preset".into())),
                        (r, _) => r,
                    };
                    let rd = match given {
                        Some(rd) if rd.rank == r => rd,
                        Some(rd) => {
                            return Err(Error::DimensionMismatch { expected: r, found: rd.rank }.into());
                        }
                        None => gl(r)?,
                    };
                    (rd, kgl_fan(r)?)
                }
                None => {
                    let rd = load_group(group)?;
                    let f = match fan {
                        Some(path) => load_fan(path, Some(rd.rank))?,
                        None => canonical_fan(&rd)?,
                    };
                    (rd, f)
                }
            };
            let rep = validate(&f);
            if !rep.valid {
                return Err(Error::InvalidFan("fan fails validation; run `fan validate` for details".into()).into());
            }
            let p = orbit_poset(&rd, &f)?;
            if let Some(path) = dot {
                fs::write(path, p.to_dot()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            let text = match format {
                Some(OrbitFormat::Dot) => p.to_dot(),
                Some(OrbitFormat::Json) => serde_json::to_string_pretty(&p.to_json()).expect("JSON"),
                _ => poset_text(&p),
            };
            Ok(Output { json: p.to_json(), text })
        }
        ModuliCmd::Kgl { r } => {
            let f = kgl_fan(*r)?;
            Ok(Output { json: to_value(&f.to_json()), text: fan_text(&f) })
        }
        ModuliCmd::LosevManin { r, partition, enumerate } => losev_manin(*r, partition.as_deref(), *enumerate),
    }
}

fn parse_partition(s: &str) -> Result<Vec<Vec<usize>>, CliError> {
    s.split('|').map(|b| parse_list(b, "--partition")).collect()
}

fn fmt_partition(p: &[Vec<usize>]) -> String {
    p.iter()
        .map(|b| b.iter().map(|j| format!("a{j}")).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(" | ")
}

fn losev_manin(r: usize, partition: Option<&str>, enumerate: bool) -> Res {
    if r == 0 {
        return Err(Error::Precondition("r must be at least 1".into()).into());
    }
    let rd = pgl(r + 1)?;
    let fan = canonical_fan(&rd)?;
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut one = |p: Vec<Vec<usize>>| -> Result<(), CliError> {
        let t = losev_manin_type(r, &p)?;
        let v = sigma_stable(&rd, &fan, &t)?;
        let entries: Vec<String> = t.entries.iter().map(|e| fmt_ivec(e)).collect();
        let _ = writeln!(
            text,
            "{}  ->  [{}]  {}",
            fmt_partition(&p),
            entries.join(", "),
            if v.stable { "stable" } else { "unstable" }
        );
        rows.push(json!({ "partition": p, "type": t, "stable": v.stable, "reason": v.reason }));
        Ok(())
    };
    match (partition, enumerate) {
        (Some(s), _) => one(parse_partition(s)?)?,
        (None, true) => {
            for k in 0..=r {
                for p in ordered_set_partitions(r + 1, k + 1) {
                    one(p)?;
                }
            }
        }
        (None, false) => return Err(CliError::Usage("give --partition or --enumerate".into())),
    }
    Ok(Output { json: json!({ "r": r, "chains": rows }), text })
}
