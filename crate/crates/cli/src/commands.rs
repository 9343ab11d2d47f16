//! The eight commands. Each returns a results payload plus CSV tables and
//! leaves file output to the caller.

use std::str::FromStr;

use coarse_core::covered_space::{
    build_nerve, chain_distance, nerve_growth_profile, Covering, CoveringSpec, DyadicAnnuli,
    ExplicitFinite, GroupTranslates, HeisenbergCubes, LatticeIndex, NerveGraph, Rational,
    RationalPoint, UniformGrid, Window,
};
use coarse_core::decomposition::{
    besov_norm, besov_norm_refined, build_bapu, decomposition_norm, decomposition_norm_refined,
    modulation_norm, modulation_norm_refined, sl2_l1_norm, standard_gaussian, AnyBapu, Bapu,
    DyadicBapu, GlobalNorm, Grid, NormMode, NormResult, Order, Preset, SampledFunction, Sampler,
    StftLattice,
};
use coarse_core::embeddings::{
    dyadic_power_embedding, fit_qi_parameters, geometric_condition_check, tensor_embedding,
    EmbeddingError, MapSample, PowerEmbeddingOptions, SupportSpace,
};
use coarse_core::groups::{
    growth_function, word_distance, GeneratingSet, Group, GroupModel, DEFAULT_ELEMENT_BUDGET,
};
use coarse_core::invariants::{
    classify_growth, estimate_ends, hyperbolicity_trend, qi_obstruction_report, DeltaOptions,
    GrowthProfile, HyperbolicityProfile, SpaceProfile,
};
use coarse_core::with_group;
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::config::{
    exponent, positive, EmbedParams, Function, FunctionMap, GridParams, Loaded, NormParams,
    Overrides, SpaceDecl, SupportDecl,
};
use crate::error::CliError;
use crate::report::{Output, Table};

/// Covering-specific glue: a base index, a default window and point parsing.
trait CliCovering: Covering {
    fn origin(&self) -> Self::Index;
    fn default_window(&self, radius: u32) -> Window;
    fn parse_point(&self, v: &Value) -> Result<Self::Point, CliError>;
}

fn rational(v: &Value) -> Result<Rational, CliError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i))
            } else {
                let x = n.as_f64().unwrap_or(f64::NAN);
                Rational::approximate_float(x)
                    .ok_or_else(|| CliError::config(format!("cannot represent {x} as a fraction")))
            }
        }
        Value::String(s) => Rational::from_str(s.trim())
            .map_err(|_| CliError::config(format!("bad fraction {s:?}"))),
        other => Err(CliError::config(format!("expected a number, got {other}"))),
    }
}

fn rational_point(v: &Value, dim: usize) -> Result<RationalPoint, CliError> {
    let items = v
        .as_array()
        .ok_or_else(|| CliError::config(format!("expected a coordinate list, got {v}")))?;
    if items.len() != dim {
        return Err(CliError::config(format!(
            "point {v} should have {dim} coordinates"
        )));
    }
    items.iter().map(rational).collect()
}

impl CliCovering for UniformGrid {
    fn origin(&self) -> LatticeIndex {
        LatticeIndex::new(&vec![0; self.dim()])
    }

    fn default_window(&self, radius: u32) -> Window {
        Window::Box {
            radius: radius as i64,
        }
    }

    fn parse_point(&self, v: &Value) -> Result<RationalPoint, CliError> {
        rational_point(v, self.dim())
    }
}

impl CliCovering for DyadicAnnuli {
    fn origin(&self) -> u32 {
        0
    }

    fn default_window(&self, radius: u32) -> Window {
        Window::Range {
            lo: 0,
            hi: 2 * radius as i64,
        }
    }

    fn parse_point(&self, v: &Value) -> Result<RationalPoint, CliError> {
        rational_point(v, self.dim())
    }
}

impl CliCovering for HeisenbergCubes {
    fn origin(&self) -> LatticeIndex {
        LatticeIndex::new(&[0, 0, 0])
    }

    fn default_window(&self, radius: u32) -> Window {
        Window::Box {
            radius: radius as i64,
        }
    }

    fn parse_point(&self, v: &Value) -> Result<RationalPoint, CliError> {
        rational_point(v, 3)
    }
}

impl CliCovering for ExplicitFinite {
    fn origin(&self) -> usize {
        0
    }

    fn default_window(&self, _radius: u32) -> Window {
        Window::Full
    }

    fn parse_point(&self, v: &Value) -> Result<u32, CliError> {
        v.as_u64()
            .and_then(|x| u32::try_from(x).ok())
            .ok_or_else(|| CliError::config(format!("expected a ground-set element, got {v}")))
    }
}

impl<G: Group> CliCovering for GroupTranslates<G> {
    fn origin(&self) -> Self::Index {
        self.label(self.group().identity())
    }

    fn default_window(&self, radius: u32) -> Window {
        Window::Ball { radius }
    }

    fn parse_point(&self, v: &Value) -> Result<G::Elem, CliError> {
        let s = v
            .as_str()
            .ok_or_else(|| CliError::config(format!("expected an element string, got {v}")))?;
        Ok(self.group().parse(s)?)
    }
}

/// Runs `$body` with `$c` bound to the concrete covering named by `$spec`.
macro_rules! with_covering {
    ($loaded:expr, $spec:expr, |$c:ident| $body:expr) => {
        match $spec {
            CoveringSpec::UniformGrid { dim } => {
                let $c = UniformGrid::new(*dim)?;
                $body
            }
            CoveringSpec::DyadicAnnuli { dim, power } => {
                let $c = DyadicAnnuli::new(*dim, *power)?;
                $body
            }
            CoveringSpec::HeisenbergCubes => {
                let $c = HeisenbergCubes;
                $body
            }
            CoveringSpec::ExplicitFinite { ground, elements } => {
                let $c = ExplicitFinite::new(ground.clone(), elements.clone())?;
                $body
            }
            CoveringSpec::GroupTranslates { group, radius } => {
                let model = GroupModel::from_spec($loaded.group(group)?)?;
                with_group!(model, |g| {
                    let gens = GeneratingSet::standard(&g);
                    let $c = GroupTranslates::new(g, gens, *radius)?;
                    $body
                })
            }
        }
    };
}

fn section<'a, T>(s: &'a Option<T>, name: &str) -> Result<&'a T, CliError> {
    s.as_ref()
        .ok_or_else(|| CliError::config(format!("config has no {name:?} section")))
}

fn budget(l: &Loaded, o: &Overrides) -> usize {
    o.budget
        .or(l.config.budget)
        .unwrap_or(DEFAULT_ELEMENT_BUDGET)
}

fn seed(l: &Loaded, o: &Overrides) -> (u64, Option<String>) {
    match o.seed.or(l.config.seed) {
        Some(s) => (s, None),
        None => {
            let s = DeltaOptions::default().seed;
            (
                s,
                Some(format!("no seed given; using the default seed {s}")),
            )
        }
    }
}

fn tol(o: &Overrides, configured: f64) -> Result<f64, CliError> {
    let t = o.tol.unwrap_or(configured);
    positive("tol", t)?;
    Ok(t)
}

fn check_tail(t: f64) -> Result<(), CliError> {
    if t > 0.0 && t <= 1.0 {
        Ok(())
    } else {
        Err(CliError::config(format!(
            "tail_fraction must be in (0, 1], got {t}"
        )))
    }
}

fn json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

fn growth_table(p: &GrowthProfile) -> Table {
    let mut t = Table::new("growth.csv", &["radius", "ball_size"]);
    for (r, s) in p.radii.iter().zip(&p.sizes) {
        t.push(vec![r.to_string(), s.to_string()]);
    }
    t
}

fn group_growth(
    l: &Loaded,
    name: &str,
    r_max: u32,
    budget: usize,
) -> Result<GrowthProfile, CliError> {
    let model = GroupModel::from_spec(l.group(name)?)?;
    Ok(with_group!(model, |g| growth_function(
        &g,
        &GeneratingSet::standard(&g),
        r_max,
        budget
    ))?)
}

fn nerve_growth<C: CliCovering>(
    c: &C,
    window: Option<&Window>,
    r_max: u32,
    ends_radius: Option<u32>,
) -> Result<(GrowthProfile, Window, Option<usize>), CliError> {
    let window = window
        .cloned()
        .unwrap_or_else(|| c.default_window(r_max + 2));
    let nerve = build_nerve(c, &window)?;
    let origin = c.origin();
    let profile = nerve_growth_profile(&nerve, &origin, r_max)?;
    let ends = ends_radius.and_then(|r| estimate_ends(&nerve, &origin, r));
    Ok((profile, window, ends))
}

fn one_source<'a>(
    group: &'a Option<String>,
    covering: &'a Option<String>,
) -> Result<Result<&'a str, &'a str>, CliError> {
    match (group, covering) {
        (Some(g), None) => Ok(Ok(g)),
        (None, Some(c)) => Ok(Err(c)),
        _ => Err(CliError::config(
            "give exactly one of \"group\" and \"covering\"",
        )),
    }
}

pub fn growth(l: &Loaded, o: &Overrides) -> Result<Output, CliError> {
    let p = section(&l.config.growth, "growth")?;
    check_tail(p.tail_fraction)?;
    let (profile, window) = match one_source(&p.group, &p.covering)? {
        Ok(g) => (
            group_growth(l, g, p.r_max, budget(l, o))?,
            Window::Ball { radius: p.r_max }.to_string(),
        ),
        Err(c) => {
            let (prof, w, _) = with_covering!(l, l.covering(c)?, |cov| nerve_growth(
                &cov,
                p.window.as_ref(),
                p.r_max,
                None
            ))?;
            (prof, w.to_string())
        }
    };
    let classification = classify_growth(&profile, p.tail_fraction)?;
    Ok(Output {
        results: json!({
            "profile": profile,
            "window": window,
            "tail_fraction": p.tail_fraction,
            "classification": classification,
        }),
        warnings: vec![format!(
            "growth classified on the finite window {window}; it is evidence, not a proof"
        )],
        tables: vec![growth_table(&profile)],
    })
}

fn delta_table(p: &HyperbolicityProfile) -> Table {
    let mut t = Table::new(
        "delta.csv",
        &["radius", "delta", "sample_size", "quadruples", "exhaustive"],
    );
    for k in 0..p.radii.len() {
        t.push(vec![
            p.radii[k].to_string(),
            p.delta[k].to_string(),
            p.sample_sizes[k].to_string(),
            p.quadruples[k].to_string(),
            p.exhaustive[k].to_string(),
        ]);
    }
    t
}

fn delta_options(l: &Loaded, o: &Overrides, warnings: &mut Vec<String>) -> DeltaOptions {
    let d = DeltaOptions::default();
    let (seed, note) = seed(l, o);
    warnings.extend(note);
    let section = l.config.delta.as_ref();
    DeltaOptions {
        exhaustive_limit: section
            .and_then(|s| s.exhaustive_limit)
            .unwrap_or(d.exhaustive_limit),
        samples: section.and_then(|s| s.samples).unwrap_or(d.samples),
        seed,
    }
}

fn sampling_warnings(p: &HyperbolicityProfile, warnings: &mut Vec<String>) {
    for k in 0..p.radii.len() {
        if !p.exhaustive[k] {
            warnings.push(format!(
                "radius {}: delta from {} sampled quadruples (seed {}), a lower bound",
                p.radii[k], p.quadruples[k], p.seed
            ));
        }
    }
}

fn group_delta(
    l: &Loaded,
    name: &str,
    radii: &[u32],
    opts: &DeltaOptions,
    budget: usize,
) -> Result<HyperbolicityProfile, CliError> {
    let model = GroupModel::from_spec(l.group(name)?)?;
    Ok(with_group!(model, |g| hyperbolicity_trend(
        &g,
        &GeneratingSet::standard(&g),
        radii,
        opts,
        budget
    ))?)
}

pub fn delta(l: &Loaded, o: &Overrides) -> Result<Output, CliError> {
    let p = section(&l.config.delta, "delta")?;
    let mut warnings = Vec::new();
    let opts = delta_options(l, o, &mut warnings);
    let profile = group_delta(l, &p.group, &p.radii, &opts, budget(l, o))?;
    sampling_warnings(&profile, &mut warnings);
    Ok(Output {
        tables: vec![delta_table(&profile)],
        results: json!({ "profile": profile, "options": opts }),
        warnings,
    })
}

fn label(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn covering_distances<C: CliCovering>(
    c: &C,
    window: &Window,
    pairs: &[(Value, Value)],
) -> Result<Vec<u32>, CliError> {
    let nerve = build_nerve(c, window)?;
    pairs
        .iter()
        .map(|(a, b)| {
            let x = c.parse_point(a)?;
            let y = c.parse_point(b)?;
            Ok(chain_distance(c, &nerve, &x, &y)?)
        })
        .collect()
}

fn word_distances<G: Group>(
    g: &G,
    pairs: &[(Value, Value)],
    cap: u32,
    budget: usize,
) -> Result<Vec<u32>, CliError> {
    let gens = GeneratingSet::standard(g);
    let parse = |v: &Value| -> Result<G::Elem, CliError> {
        let s = v
            .as_str()
            .ok_or_else(|| CliError::config(format!("expected an element string, got {v}")))?;
        Ok(g.parse(s)?)
    };
    pairs
        .iter()
        .map(|(a, b)| {
            Ok(word_distance(
                g,
                &gens,
                &parse(a)?,
                &parse(b)?,
                cap,
                budget,
            )?)
        })
        .collect()
}

pub fn dist(l: &Loaded, o: &Overrides) -> Result<Output, CliError> {
    let p = section(&l.config.dist, "dist")?;
    if p.pairs.is_empty() {
        return Err(CliError::config("dist needs at least one pair"));
    }
    let (metric, window, distances) = match one_source(&p.group, &p.covering)? {
        Ok(name) => {
            let model = GroupModel::from_spec(l.group(name)?)?;
            let d = with_group!(model, |g| word_distances(&g, &p.pairs, p.cap, budget(l, o)))?;
            ("word".to_string(), None, d)
        }
        Err(name) => {
            let w = p
                .window
                .clone()
                .ok_or_else(|| CliError::config("covering distances need a window"))?;
            let d = with_covering!(l, l.covering(name)?, |c| covering_distances(
                &c, &w, &p.pairs
            ))?;
            ("chain".to_string(), Some(w.to_string()), d)
        }
    };
    let mut table = Table::new("dist.csv", &["a", "b", "distance"]);
    let mut rows = Vec::new();
    for ((a, b), d) in p.pairs.iter().zip(&distances) {
        table.push(vec![label(a), label(b), d.to_string()]);
        rows.push(json!({ "a": a, "b": b, "distance": d }));
    }
    let mut warnings = Vec::new();
    if let Some(w) = &window {
        warnings.push(format!("chain distances computed inside the window {w}"));
    }
    Ok(Output {
        results: json!({ "metric": metric, "window": window, "cap": p.cap, "pairs": rows }),
        warnings,
        tables: vec![table],
    })
}

fn edge_table<I>(nerve: &NerveGraph<I>) -> Table
where
    I: Clone + Eq + std::hash::Hash + std::fmt::Display,
{
    let mut t = Table::new("nerve_edges.csv", &["index_a", "index_b"]);
    for a in 0..nerve.len() {
        for &b in nerve.adjacent(a).iter().filter(|&&b| b >= a) {
            t.push(vec![
                nerve.indices()[a].to_string(),
                nerve.indices()[b].to_string(),
            ]);
        }
    }
    t
}

fn nerve_report<C: CliCovering>(
    c: &C,
    window: &Window,
    growth_radius: Option<u32>,
    ends_radius: Option<u32>,
) -> Result<Output, CliError> {
    let nerve = build_nerve(c, window)?;
    let origin = c.origin();
    let growth = growth_radius
        .map(|r| nerve_growth_profile(&nerve, &origin, r))
        .transpose()?;
    let ends = ends_radius.and_then(|r| estimate_ends(&nerve, &origin, r));
    let mut tables = vec![edge_table(&nerve)];
    tables.extend(growth.as_ref().map(growth_table));
    Ok(Output {
        results: json!({
            "summary": nerve.summary(),
            "connected": coarse_core::covered_space::is_concatenation(&nerve),
            "origin": origin.to_string(),
            "growth": growth,
            "ends_estimate": ends,
        }),
        warnings: vec![format!(
            "admissibility constant is a lower bound from the interior of {window}"
        )],
        tables,
    })
}

pub fn nerve(l: &Loaded, _o: &Overrides) -> Result<Output, CliError> {
    let p = section(&l.config.nerve, "nerve")?;
    with_covering!(l, l.covering(&p.covering)?, |c| nerve_report(
        &c,
        &p.window,
        p.growth_radius,
        p.ends_radius
    ))
}

fn local_table(r: &NormResult) -> Table {
    let mut t = Table::new("local_norms.csv", &["index", "value"]);
    for ln in &r.local_norms {
        t.push(vec![ln.index.clone(), ln.value.to_string()]);
    }
    t
}

fn sample(f: &Function, grid: &Grid) -> SampledFunction {
    match f {
        Function::Preset(p) => p.sample(grid),
        Function::Data(d) => d.clone(),
    }
}

fn symmetric(dim: usize, g: &GridParams) -> Result<Grid, CliError> {
    positive("half_width", g.half_width)?;
    positive("h", g.h)?;
    Ok(Grid::symmetric(dim, g.half_width, g.h)?)
}

const UNCHECKED: &str = "sampled input data: no refinement or truncation check was possible";

#[allow(clippy::too_many_arguments)]
fn decomposition_with<B: Bapu>(
    f: &Function,
    bapu: &B,
    grid: &GridParams,
    p: f64,
    mode: NormMode,
    global: &GlobalNorm,
    tol: f64,
    warnings: &mut Vec<String>,
) -> Result<NormResult, CliError> {
    Ok(match f {
        Function::Preset(pr) => {
            let g = symmetric(pr.dim(), grid)?;
            decomposition_norm_refined(pr, &g, bapu, p, mode, global, tol)?
        }
        Function::Data(d) => {
            warnings.push(UNCHECKED.into());
            decomposition_norm(d, bapu, p, mode, global)?
        }
    })
}

fn norm_output(r: NormResult, mut warnings: Vec<String>) -> Output {
    warnings.extend(r.metadata.warnings.iter().cloned());
    Output {
        tables: vec![local_table(&r)],
        results: json!({ "global": r.global, "local_norms": r.local_norms, "metadata": r.metadata }),
        warnings,
    }
}

pub fn norm(l: &Loaded, o: &Overrides) -> Result<Output, CliError> {
    let params = section(&l.config.norm, "norm")?;
    let mut warnings = Vec::new();
    match params {
        NormParams::Decomposition {
            function,
            covering,
            order,
            eps,
            p,
            q,
            mode,
            weight,
            grid,
            tol: t,
        } => {
            exponent("p", *p)?;
            exponent("q", *q)?;
            let tol = tol(o, *t)?;
            let f = l.function(function)?;
            let global = GlobalNorm {
                q: *q,
                weight: *weight,
            };
            let r = match build_bapu(l.covering(covering)?, *order, *eps)? {
                AnyBapu::Grid(b) => {
                    decomposition_with(&f, &b, grid, *p, *mode, &global, tol, &mut warnings)?
                }
                AnyBapu::Dyadic(b) => {
                    decomposition_with(&f, &b, grid, *p, *mode, &global, tol, &mut warnings)?
                }
            };
            Ok(norm_output(r, warnings))
        }
        NormParams::Besov {
            function,
            power,
            order,
            eps,
            s,
            p,
            q,
            grid,
            tol: t,
        } => {
            exponent("p", *p)?;
            exponent("q", *q)?;
            let tol = tol(o, *t)?;
            let f = l.function(function)?;
            let bapu = DyadicBapu::new(f.dim(), *power, *eps, Order::from_u32(*order)?)?;
            let r = match &f {
                Function::Preset(pr) => {
                    besov_norm_refined(pr, &symmetric(pr.dim(), grid)?, &bapu, *s, *p, *q, tol)?
                }
                Function::Data(d) => {
                    warnings.push(UNCHECKED.into());
                    besov_norm(d, &bapu, *s, *p, *q)?
                }
            };
            Ok(norm_output(r, warnings))
        }
        NormParams::Modulation {
            function,
            window,
            grid,
            stride,
            max_shift,
            p,
            q,
            tol: t,
        } => {
            exponent("p", *p)?;
            exponent("q", *q)?;
            let tol = tol(o, *t)?;
            if *stride == 0 {
                return Err(CliError::config("stride must be at least 1"));
            }
            let f = l.function(function)?;
            let g = match window {
                Some(name) => l.function(name)?,
                None => Function::Preset(standard_gaussian(f.dim())),
            };
            if g.dim() != f.dim() {
                return Err(CliError::config("function and window differ in dimension"));
            }
            let lattice = StftLattice {
                stride: *stride,
                max_shift: max_shift.unwrap_or(grid.half_width),
            };
            let results = match (&f, &g) {
                (Function::Preset(fp), Function::Preset(gp)) => {
                    positive("half_width", grid.half_width)?;
                    positive("h", grid.h)?;
                    let r = modulation_norm_refined(
                        fp,
                        gp,
                        grid.half_width,
                        grid.h,
                        &lattice,
                        *p,
                        *q,
                        tol,
                    )?;
                    json!(r)
                }
                _ => {
                    warnings.push(UNCHECKED.into());
                    let on = match (&f, &g) {
                        (Function::Data(d), _) | (_, Function::Data(d)) => d.grid().clone(),
                        _ => unreachable!(),
                    };
                    let value =
                        modulation_norm(&sample(&f, &on), &sample(&g, &on), &lattice, *p, *q)?;
                    json!({ "value": value, "p": p, "q": q, "stride": stride, "max_shift": lattice.max_shift })
                }
            };
            Ok(Output {
                results,
                warnings,
                tables: Vec::new(),
            })
        }
        NormParams::Iwasawa {
            function,
            domain,
            tol: t,
        } => {
            let tol = tol(o, *t)?;
            let r = sl2_l1_norm(function, domain, tol)?;
            let exact = function.exact();
            let relative_error = exact.map(|e| (r.value - e).abs() / e);
            Ok(Output {
                results: json!({
                    "function": function,
                    "result": r,
                    "closed_form": exact,
                    "relative_error": relative_error,
                }),
                warnings,
                tables: Vec::new(),
            })
        }
    }
}

fn space_profile(
    l: &Loaded,
    d: &SpaceDecl,
    opts: &DeltaOptions,
    budget: usize,
) -> Result<SpaceProfile, CliError> {
    check_tail(d.tail_fraction)?;
    let (growth, window, ends) = match one_source(&d.group, &d.covering)? {
        Ok(g) => {
            if d.ends_radius.is_some() {
                return Err(CliError::config(format!(
                    "{}: ends are estimated on coverings only",
                    d.name
                )));
            }
            (
                group_growth(l, g, d.r_max, budget)?,
                Window::Ball { radius: d.r_max },
                None,
            )
        }
        Err(c) => {
            if d.delta_radii.is_some() {
                return Err(CliError::config(format!(
                    "{}: delta probes need a group",
                    d.name
                )));
            }
            with_covering!(l, l.covering(c)?, |cov| nerve_growth(
                &cov,
                d.window.as_ref(),
                d.r_max,
                d.ends_radius
            ))?
        }
    };
    let hyperbolicity = match (&d.group, &d.delta_radii) {
        (Some(g), Some(radii)) => Some(group_delta(l, g, radii, opts, budget)?),
        _ => None,
    };
    Ok(SpaceProfile {
        name: d.name.clone(),
        growth: classify_growth(&growth, d.tail_fraction)?,
        seed: hyperbolicity.as_ref().map(|h| h.seed),
        hyperbolicity,
        window: window.to_string(),
        ends,
    })
}

pub fn obstruct(l: &Loaded, o: &Overrides) -> Result<Output, CliError> {
    let p = section(&l.config.obstruct, "obstruct")?;
    if p.spaces.len() < 2 {
        return Err(CliError::config("obstruct needs at least two spaces"));
    }
    let mut names: Vec<&str> = p.spaces.iter().map(|s| s.name.as_str()).collect();
    names.sort_unstable();
    if names.windows(2).any(|w| w[0] == w[1]) {
        return Err(CliError::config("space names must be unique"));
    }
    let mut warnings = Vec::new();
    let opts = delta_options(l, o, &mut warnings);
    let profiles = p
        .spaces
        .iter()
        .map(|d| space_profile(l, d, &opts, budget(l, o)))
        .collect::<Result<Vec<_>, _>>()?;
    for prof in &profiles {
        if let Some(h) = &prof.hyperbolicity {
            sampling_warnings(h, &mut warnings);
        }
    }
    let mut table = Table::new("obstruct.csv", &["a", "b", "verdict"]);
    let mut reports = Vec::new();
    for i in 0..profiles.len() {
        for j in i + 1..profiles.len() {
            let r = qi_obstruction_report(&profiles[i], &profiles[j]);
            let verdicts: Vec<String> = r
                .verdict
                .iter()
                .map(|v| json(v)["kind"].as_str().unwrap_or("").to_string())
                .collect();
            table.push(vec![
                profiles[i].name.clone(),
                profiles[j].name.clone(),
                verdicts.join(";"),
            ]);
            reports.push(r);
        }
    }
    warnings.push("invariants can separate spaces but never certify a quasi-isometry".into());
    Ok(Output {
        results: json!({ "profiles": profiles, "reports": reports }),
        warnings,
        tables: vec![table],
    })
}

fn coords(x: &[f64]) -> String {
    let parts: Vec<String> = x.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(";"))
}

pub fn qi_fit(l: &Loaded, _o: &Overrides) -> Result<Output, CliError> {
    let p = section(&l.config.qi_fit, "qi_fit")?;
    let (src, pairs) = l.map_pairs(&p.map)?;
    if pairs.len() < 2 {
        return Err(CliError::config(format!(
            "map {:?} has {} pairs; parameter fitting needs at least two",
            p.map,
            pairs.len()
        )));
    }
    let (ds, dt) = (pairs[0].0.len(), pairs[0].1.len());
    if pairs.iter().any(|(x, y)| x.len() != ds || y.len() != dt) {
        return Err(CliError::config(format!(
            "map {:?}: inconsistent point dimensions",
            p.map
        )));
    }
    if !(p.l_max >= 1.0 && p.c_max >= 0.0) {
        return Err(CliError::config("need l_max >= 1 and c_max >= 0"));
    }
    let (sm, tm) = (src.source_metric, src.target_metric);
    let sample = MapSample::from_points(
        &pairs,
        |(_, y)| y.clone(),
        |a, b| sm.distance(&a.0, &b.0),
        |a, b| tm.distance(a, b),
        |(x, _)| coords(x),
    )?;
    let w = fit_qi_parameters(&sample, p.l_max, p.c_max)?;
    let mut table = Table::new(
        "qi_violations.csv",
        &["a", "b", "source_distance", "target_distance", "excess"],
    );
    for v in &w.violations {
        table.push(vec![
            v.a.clone(),
            v.b.clone(),
            v.source_distance.to_string(),
            v.target_distance.to_string(),
            v.excess.to_string(),
        ]);
    }
    Ok(Output {
        results: json!({ "map": p.map, "pairs": pairs.len(), "witness": w }),
        warnings: vec![format!(
            "parameters fitted on {} sampled pairs only",
            pairs.len()
        )],
        tables: vec![table],
    })
}

fn preset<'a>(f: &'a Function, name: &str) -> Result<&'a Preset, CliError> {
    match f {
        Function::Preset(p) => Ok(p),
        Function::Data(_) => Err(CliError::config(format!(
            "{name:?} must be a preset: this construction resamples it"
        ))),
    }
}

/// `f(. - cells h)` on the same grid, zero outside.
fn translate(f: &SampledFunction, cells: &[i64]) -> Result<SampledFunction, EmbeddingError> {
    let grid = f.grid();
    if cells.len() != grid.dim() {
        return Err(EmbeddingError::InvalidInput(format!(
            "translation has {} components for a {}-dimensional grid",
            cells.len(),
            grid.dim()
        )));
    }
    let counts = grid.counts();
    let mut idx = vec![0usize; grid.dim()];
    let values = (0..grid.len())
        .map(|flat| {
            grid.unravel(flat, &mut idx);
            let mut src = 0usize;
            for ax in 0..idx.len() {
                let k = idx[ax] as i64 - cells[ax];
                if k < 0 || k >= counts[ax] as i64 {
                    return Complex64::new(0.0, 0.0);
                }
                src = src * counts[ax] + k as usize;
            }
            f.values()[src]
        })
        .collect();
    Ok(SampledFunction::new(grid.clone(), values)?)
}

struct Side<B: Bapu> {
    bapu: B,
    nerve: NerveGraph<B::Index>,
    p: f64,
    mode: NormMode,
}

fn side_grid(d: &SupportDecl, b: GridBapu) -> Result<Side<GridBapu>, CliError> {
    let nerve = build_nerve(&b.covering(), &d.window)?;
    Ok(Side {
        bapu: b,
        nerve,
        p: d.p,
        mode: d.mode,
    })
}

fn side_dyadic(d: &SupportDecl, b: DyadicBapu) -> Result<Side<DyadicBapu>, CliError> {
    let nerve = build_nerve(&b.covering(), &d.window)?;
    Ok(Side {
        bapu: b,
        nerve,
        p: d.p,
        mode: d.mode,
    })
}

use coarse_core::decomposition::GridBapu;

/// Runs `$body` with `$s` bound to the BAPU side declared by `$decl`.
macro_rules! with_side {
    ($l:expr, $decl:expr, |$s:ident| $body:expr) => {{
        exponent("p", $decl.p)?;
        match build_bapu($l.covering(&$decl.covering)?, $decl.order, $decl.eps)? {
            AnyBapu::Grid(b) => {
                let $s = side_grid($decl, b)?;
                $body
            }
            AnyBapu::Dyadic(b) => {
                let $s = side_dyadic($decl, b)?;
                $body
            }
        }
    }};
}

#[allow(clippy::too_many_arguments)]
fn geometric<B1: Bapu, B2: Bapu>(
    tests: &[SampledFunction],
    map: &FunctionMap,
    source: &Side<B1>,
    target: &Side<B2>,
    lc: (f64, f64),
    tol: f64,
) -> Result<Output, CliError> {
    let apply = |f: &SampledFunction| -> Result<SampledFunction, EmbeddingError> {
        match map {
            FunctionMap::Identity => Ok(f.clone()),
            FunctionMap::Translate { cells } => translate(f, cells),
        }
    };
    let s = SupportSpace {
        bapu: &source.bapu,
        nerve: &source.nerve,
        p: source.p,
        mode: source.mode,
    };
    let t = SupportSpace {
        bapu: &target.bapu,
        nerve: &target.nerve,
        p: target.p,
        mode: target.mode,
    };
    let r = geometric_condition_check(tests, apply, &s, &t, lc.0, lc.1, tol)?;
    let mut warnings = vec![format!(
        "condition checked on {} sampled test functions only",
        tests.len()
    )];
    if !r.condition_holds {
        warnings.push("geometric condition fails on the sample".into());
    }
    Ok(Output {
        results: json!(r),
        warnings,
        tables: Vec::new(),
    })
}

pub fn embed_check(l: &Loaded, o: &Overrides) -> Result<Output, CliError> {
    let params = section(&l.config.embed_check, "embed_check")?;
    match params {
        EmbedParams::DyadicPower {
            n,
            function,
            p,
            q,
            s,
            options,
        } => {
            exponent("p", *p)?;
            exponent("q", *q)?;
            if *n == 0 {
                return Err(CliError::config("n must be positive"));
            }
            let f = l.function(function)?;
            let f = preset(&f, function)?;
            let mut opts = options.unwrap_or_else(|| PowerEmbeddingOptions::for_dimension(*n));
            opts.tol = tol(o, opts.tol)?;
            let r = dyadic_power_embedding(*n, f, *p, *q, *s, &opts)?;
            let mut table = Table::new("index_map.csv", &["covering", "source", "target"]);
            for (name, m) in [
                ("scaled", &r.scaled_index_map),
                ("unscaled", &r.unscaled_index_map),
            ] {
                for (a, b) in &m.pairs {
                    table.push(vec![name.to_string(), a.to_string(), b.to_string()]);
                }
            }
            Ok(Output {
                warnings: r.warnings.clone(),
                results: json!({ "options": opts, "report": r }),
                tables: vec![table],
            })
        }
        EmbedParams::Tensor {
            function,
            eta,
            grid,
            stride,
            max_shift,
            p,
            q,
            tol: t,
        } => {
            exponent("p", *p)?;
            exponent("q", *q)?;
            positive("half_width", grid.half_width)?;
            positive("h", grid.h)?;
            if *stride == 0 {
                return Err(CliError::config("stride must be at least 1"));
            }
            let tol = tol(o, *t)?;
            let (f, e) = (l.function(function)?, l.function(eta)?);
            let lattice = StftLattice {
                stride: *stride,
                max_shift: max_shift.unwrap_or(grid.half_width),
            };
            let r = tensor_embedding(
                preset(&f, function)?,
                preset(&e, eta)?,
                grid.half_width,
                grid.h,
                &lattice,
                *p,
                *q,
                tol,
            )?;
            Ok(Output {
                results: json!(r),
                warnings: Vec::new(),
                tables: Vec::new(),
            })
        }
        EmbedParams::Geometric {
            tests,
            map,
            source,
            target,
            l: lip,
            c,
            grid,
            tol: t,
        } => {
            if !(*lip >= 1.0 && *c >= 0.0) {
                return Err(CliError::config("need l >= 1 and c >= 0"));
            }
            let tol = o.tol.unwrap_or(*t);
            if tol.is_nan() || tol < 0.0 {
                return Err(CliError::config("tol must be non-negative"));
            }
            let fs = tests
                .iter()
                .map(|n| l.function(n))
                .collect::<Result<Vec<_>, _>>()?;
            let dim = fs.first().map_or(1, Function::dim);
            if fs.iter().any(|f| f.dim() != dim) {
                return Err(CliError::config("test functions differ in dimension"));
            }
            let g = symmetric(dim, grid)?;
            let samples: Vec<SampledFunction> = fs.iter().map(|f| sample(f, &g)).collect();
            with_side!(l, source, |s| with_side!(l, target, |t| geometric(
                &samples,
                map,
                &s,
                &t,
                (*lip, *c),
                tol
            )))
        }
    }
}
