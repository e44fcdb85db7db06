use std::collections::BTreeMap;

use horolat::acceptance::Acceptance;
use horolat::convexgeom::{enumerate_faces, subgroup_data, support_bound_check};
use horolat::freegroup::{phi_boundary, prefix_ray, separate, BoundaryWord, FreeGroup, ReducedWord};
use horolat::horoboundary::{
    boundary_census, busemann_from_face, classify_ray, default_run_length, face_ray, nonconstancy_check, orbit,
    phi_trace_csv, ray_limit_window, RayCheck,
};
use horolat::lattice::{length_table_csv, LatticePoint, LengthKind};
use horolat::nctorus::{
    a_norm, main_inequality_check, polytope_set, radius_probe, weighted_norms, word_constant, l_ell, AlgebraElement,
};
use num_rational::Rational64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::config::RunConfig;
use crate::report::{Assertion, Report};
use crate::CliError;

fn inputs(cfg: &RunConfig) -> serde_json::Value {
    serde_json::to_value(cfg).expect("config serializes")
}

pub fn length_table(cfg: &RunConfig) -> Result<Report, CliError> {
    let l = cfg.length()?;
    let r = cfg.ball_radius as f64;
    let table: BTreeMap<LatticePoint, f64> = l.ball(r).into_iter().map(|x| {
        let v = l.length(&x);
        (x, v)
    }).collect();
    let mut rep = Report::new("length-table", inputs(cfg));
    rep.assertions.push(Assertion::eq("length of the origin", l.length(&LatticePoint::zero(l.dim())), 0.0));
    let symmetric = table.keys().all(|x| l.length(x) == l.length(&x.scale(-1)));
    rep.assertions.push(Assertion::holds("length is symmetric on the ball", symmetric));
    rep.results = json!({
        "length": l.label(),
        "radius": r,
        "points": table.len(),
        "table": table.iter().map(|(x, v)| json!({"point": x, "length": v})).collect::<Vec<_>>(),
    });
    rep.tables.push(("length_table.csv".into(), length_table_csv(&table, l.dim())));
    Ok(rep)
}

pub fn facets(cfg: &RunConfig) -> Result<Report, CliError> {
    let s = cfg.generating_set()?;
    let l = cfg.length()?;
    let faces = enumerate_faces(&s)?;
    let mut rep = Report::new("facets", inputs(cfg));
    let mut rows = Vec::new();
    for f in faces.iter().filter(|f| f.is_facet) {
        let (index, reps) = subgroup_data(f, &s)?;
        rows.push(json!({"face": f.to_json_value(), "index": index, "coset_reps": reps}));
        let r = if s.dim() == 1 { 20.0 } else { 10.0 };
        rep.assertions.push(Assertion::holds(
            format!("support functional of {:?} bounded by length on the ball of radius {r}", f.members),
            support_bound_check(f, &l, r),
        ));
    }
    rep.results = json!({
        "faces": faces.len(),
        "facets": rows,
        "lower_faces": faces.iter().filter(|f| !f.is_facet).map(|f| f.to_json_value()).collect::<Vec<_>>(),
    });
    Ok(rep)
}

pub fn boundary(cfg: &RunConfig) -> Result<Report, CliError> {
    let s = cfg.generating_set()?;
    let l = cfg.length()?;
    let window = cfg.window(s.dim());
    let mut rep = Report::new("boundary", inputs(cfg));
    let mut records = Vec::new();
    let mut traces = String::new();
    for face in enumerate_faces(&s)?.into_iter().filter(|f| f.is_facet) {
        let run = cfg.run_length.unwrap_or_else(|| default_run_length(&face, &l, &window));
        let b = busemann_from_face(&l, &face, &window, run)?;
        let g = face.subgroup();
        let on_subgroup: Vec<_> = b.values.iter().filter(|(u, _)| g.contains(u)).collect();
        let matching = on_subgroup.iter().filter(|(u, &v)| Rational64::from_integer(v as i64) == face.sigma_at(u) && v.fract() == 0.0).count();
        rep.assertions.push(Assertion::eq(
            format!("face Busemann point of {:?} equals its support functional on the subgroup", face.members),
            matching as f64,
            on_subgroup.len() as f64,
        ));
        rep.assertions.push(Assertion::holds(format!("all window values stabilized for {:?}", face.members), b.all_stabilized()));
        let rec = orbit(&l, &face, &window, run)?;
        if let Some(index) = face.index {
            rep.assertions.push(Assertion::eq(
                format!("orbit size of {:?} equals the subgroup index", face.members),
                rec.orbit.len() as f64,
                index as f64,
            ));
        }
        let witnesses: Vec<_> = window
            .iter()
            .filter(|y| !g.contains(y))
            .take(5)
            .map(|y| nonconstancy_check(&l, &face, y).map(|w| json!({"y": y, "witness": w})))
            .collect::<Result<_, _>>()?;
        let ys: Vec<LatticePoint> = s.half();
        let ray = face_ray(&face, 2 * run, &LatticePoint::zero(s.dim()));
        traces.push_str(&format!("# face {:?}\n", face.members));
        traces.push_str(&phi_trace_csv(&l, &ray, &ys));
        records.push(json!({
            "run_length": run,
            "busemann": b.to_json_value(),
            "orbit": rec.to_json_value(),
            "nonconstancy": witnesses,
        }));
    }
    let census = boundary_census(&l, cfg.census_radius, &window, cfg.run_length)?;
    rep.results = json!({"facets": records, "census": census.to_json_value()});
    rep.diagnostics = json!({"census_is_lower_bound": census.lower_bound});
    rep.tables.push(("phi_traces.csv".into(), traces));
    Ok(rep)
}

fn element(cfg: &RunConfig, dim: usize) -> Result<AlgebraElement, CliError> {
    let c = cfg.cocycle(dim)?;
    match &cfg.element {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
            let f = AlgebraElement::from_json(&text).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
            if f.dim() != dim {
                return Err(CliError::Config(format!("element has dimension {}, length has {dim}", f.dim())));
            }
            Ok(f)
        }
        None => Ok(AlgebraElement::random(&c, cfg.support_radius(c.dim()), &mut ChaCha8Rng::seed_from_u64(cfg.seed))),
    }
}

pub fn seminorm(cfg: &RunConfig) -> Result<Report, CliError> {
    let l = cfg.length()?;
    let dim = l.dim();
    let f = element(cfg, dim)?;
    let trunc = cfg.truncation(dim);
    let mut rep = Report::new("seminorm", inputs(cfg));
    let a = a_norm(&f, &trunc);
    let le = l_ell(&f, &l, &trunc);
    let (upper, lower) = weighted_norms(&f, &l);
    rep.assertions.push(Assertion::le("weighted l2 norm bounds the seminorm from below", lower, le.value * (1.0 + 1e-9)));
    rep.assertions.push(Assertion::le("seminorm bounded by the weighted l1 norm", le.value, upper * (1.0 + 1e-9)));
    rep.assertions.push(Assertion::holds("seminorm truncation trace is monotone", le.trace_monotone()));
    let p: Vec<f64> = (0..dim).map(|i| 0.1 + 0.2 * i as f64).collect();
    let shifted = l_ell(&f.dual_action(&p), &l, &trunc);
    rep.assertions.push(Assertion::le("seminorm invariant under the dual action", (shifted.value - le.value).abs(), 1e-6));
    let mut constants = serde_json::Value::Null;
    let mut inequality = serde_json::Value::Null;
    if polytope_set(&l).is_some() {
        let k = match l.kind() {
            LengthKind::Word(_) => {
                let (k, per) = word_constant(&l)?;
                constants = serde_json::to_value(per).expect("constants serialize");
                k
            }
            _ => 1.0,
        };
        let r = main_inequality_check(&f, &l, k, &trunc, 1e-3)?;
        rep.assertions.push(Assertion::le("differential bounded by k times the seminorm", r.df_norm, r.bound * (1.0 + 1e-3)));
        inequality = serde_json::to_value(r).expect("report serializes");
    }
    rep.results = json!({
        "element": serde_json::from_str::<serde_json::Value>(&f.to_json()).expect("element json"),
        "norm": a,
        "seminorm": le,
        "weighted_l1": upper,
        "weighted_l2": lower,
        "dual_action": {"p": p, "seminorm": shifted.value},
        "k_constants": constants,
        "inequality": inequality,
    });
    rep.diagnostics = json!({"norm_converged": a.converged, "seminorm_converged": le.converged});
    if cfg.tol > 0.0 && !(a.converged && le.converged) {
        rep.budget = Some(format!("truncation reached radius {} before tolerance {}", trunc.r_max, cfg.tol));
    }
    Ok(rep)
}

pub fn radius(cfg: &RunConfig) -> Result<Report, CliError> {
    let l = cfg.length()?;
    let c = cfg.cocycle(l.dim())?;
    let mut trunc = cfg.truncation(l.dim());
    if cfg.lanczos_iter.is_none() && l.dim() > 1 {
        trunc.lanczos_iter = 40;
    }
    let probe = radius_probe(&l, &c, cfg.support_radius(l.dim()), cfg.samples, cfg.seed, &trunc);
    let mut rep = Report::new("radius", inputs(cfg));
    rep.assertions.push(Assertion::holds("lengths bounded below on the sampled ball", probe.consistent));
    rep.assertions.push(Assertion::le("certified constant below the sampled estimate", probe.certified, probe.estimate * (1.0 + 1e-9)));
    rep.results = serde_json::to_value(&probe).expect("probe serializes");
    Ok(rep)
}

fn parse<T: std::str::FromStr<Err = horolat::Error>>(s: &str) -> Result<T, CliError> {
    s.parse().map_err(|e| CliError::Config(format!("{s:?}: {e}")))
}

pub fn freegroup(cfg: &RunConfig) -> Result<Report, CliError> {
    let words: Vec<ReducedWord> = cfg.words.iter().map(|w| parse(w)).collect::<Result<_, _>>()?;
    let bws: Vec<BoundaryWord> = cfg.boundary.iter().map(|w| parse(w)).collect::<Result<_, _>>()?;
    let mut rep = Report::new("freegroup", inputs(cfg));
    let mut values = Vec::new();
    for w in &bws {
        let ray = prefix_ray(w, cfg.prefix_length);
        let verdict = classify_ray(&FreeGroup, &ray, &RayCheck { eps: 0.5, threshold: 0.0, probes: words.clone() });
        let limit = ray_limit_window(&FreeGroup, &ray, &words, cfg.prefix_length / 2)?;
        let mut row = BTreeMap::new();
        for x in &words {
            let v = phi_boundary(x, w);
            rep.assertions.push(Assertion::eq(format!("boundary value of {x} at {w} matches the prefix limit"), v as f64, limit.values[x]));
            row.insert(x.to_string(), v);
        }
        values.push(json!({"boundary": w.to_string(), "ray": verdict, "values": row}));
    }
    let mut separations = Vec::new();
    for (i, v) in bws.iter().enumerate() {
        for w in &bws[i + 1..] {
            if v == w {
                continue;
            }
            let s = separate(v, w)?;
            rep.assertions.push(Assertion::holds(format!("{v} and {w} separated"), s.values == (1, -1)));
            separations.push(json!({"v": v.to_string(), "w": w.to_string(), "separation": s}));
        }
    }
    rep.results = json!({"values": values, "separations": separations});
    Ok(rep)
}

pub fn accept(cfg: &RunConfig, filter: Option<&str>) -> Result<Report, CliError> {
    let suite = Acceptance::new(cfg.acceptance.clone());
    let results = suite.run(filter);
    if results.is_empty() {
        return Err(CliError::Config(format!("no criterion matches {:?}", filter.unwrap_or(""))));
    }
    let mut rep = Report::new("accept", inputs(cfg));
    for r in &results {
        rep.assertions.push(Assertion::holds(format!("{} {}", r.id, r.name), r.pass));
    }
    rep.results = serde_json::to_value(&results).expect("results serialize");
    Ok(rep)
}
