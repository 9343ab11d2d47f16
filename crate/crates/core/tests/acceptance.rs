//! Acceptance run: one line per criterion, nonzero exit if any fails.
//!
//! Built with `harness = false` so the lines show up in `cargo test` output.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use coarse_core::covered_space::{
    build_nerve, nerve_growth_profile, rational_point, ChainDistances, DyadicAnnuli, LatticeIndex,
    UniformGrid, Window,
};
use coarse_core::decomposition::{clustering_map, Grid, SampledFunction};
use coarse_core::decomposition::{
    decomposition_norm, modulation_norm_refined, sl2_l1_norm, standard_gaussian, Bapu, DyadicBapu,
    GlobalNorm, GridBapu, IwasawaDomain, IwasawaFunction, NormMode, Order, Preset, Sampler,
    StftLattice,
};
use coarse_core::embeddings::{
    dyadic_power_embedding, gamma_lift, tensor_embedding, PowerEmbeddingOptions,
};
use coarse_core::groups::{
    ball, distance_matrix, growth_function, DiscreteHeisenberg, EngelLattice, FreeAbelian,
    FreeGroup, GeneratingSet, Group, Sl2z, DEFAULT_ELEMENT_BUDGET,
};
use coarse_core::invariants::{
    bass_guivarch, classify_growth, estimate_ends, homogeneous_dimension, hyperbolicity_trend,
    qi_obstruction_report, DeltaOptions, GrowthClassification, GrowthProfile, GrowthVector,
    HyperbolicityProfile, LowerCentralData, SpaceProfile, Trend, Verdict, DEFAULT_TAIL_FRACTION,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn within_time(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

fn degree_of(c: &GrowthClassification) -> Result<f64, String> {
    c.degree().ok_or_else(|| format!("not polynomial: {c:?}"))
}

fn classify(p: &GrowthProfile) -> Result<GrowthClassification, String> {
    classify_growth(p, DEFAULT_TAIL_FRACTION).map_err(err)
}

/// Exponential profiles stop at small radii; a wider tail keeps six points.
const SHORT_TAIL_FRACTION: f64 = 0.6;

fn classify_short(p: &GrowthProfile) -> Result<GrowthClassification, String> {
    classify_growth(p, SHORT_TAIL_FRACTION).map_err(err)
}

fn group_growth<G: Group>(g: &G, r: u32, budget: usize) -> Result<GrowthProfile, String> {
    growth_function(g, &GeneratingSet::standard(g), r, budget).map_err(err)
}

fn lattice_points(k: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-r..=r).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    out
}

fn chebyshev_law() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0usize;
    for k in 1..=3 {
        let grid = UniformGrid::new(k).map_err(err)?;
        let nerve = build_nerve(&grid, &Window::Box { radius: 7 }).map_err(err)?;
        let pts = lattice_points(k, 6);
        let rp: Vec<_> = pts.iter().map(|p| rational_point(p, 1)).collect();
        for (a, x) in pts.iter().enumerate() {
            let from = ChainDistances::new(&grid, &nerve, &rp[a]).map_err(err)?;
            for (b, y) in pts.iter().enumerate() {
                let expected = x
                    .iter()
                    .zip(y)
                    .map(|(s, t)| (s - t).abs())
                    .max()
                    .unwrap_or(0);
                let got = from.to(&rp[b]).map_err(err)?;
                ensure(
                    got as i64 == expected,
                    format!("k={k} {x:?} {y:?}: {got} vs {expected}"),
                )?;
                pairs += 1;
            }
        }
    }
    let t = within_time(start, Duration::from_secs(30))?;
    Ok(format!("{pairs} pairs exact, {t:.2?}"))
}

fn heisenberg_growth() -> Outcome {
    let start = Instant::now();
    let h3 = DiscreteHeisenberg::new(1).map_err(err)?;
    let p = group_growth(&h3, 12, 5_000_000)?;
    let d = degree_of(&classify(&p)?)?;
    ensure((3.5..=4.5).contains(&d), format!("degree {d:.3}"))?;
    let t = within_time(start, Duration::from_secs(300))?;
    Ok(format!(
        "beta(12) = {}, degree {d:.3}, {t:.2?}",
        p.sizes[12]
    ))
}

fn lattice_degrees() -> Outcome {
    let mut parts = Vec::new();
    for (k, r) in [(1usize, 30u32), (2, 20), (3, 12)] {
        let z = FreeAbelian::new(k).map_err(err)?;
        let d = degree_of(&classify(&group_growth(&z, r, DEFAULT_ELEMENT_BUDGET)?)?)?;
        ensure((d - k as f64).abs() <= 0.2, format!("Z^{k}: degree {d:.3}"))?;
        parts.push(format!("Z^{k} {d:.3}"));
    }
    Ok(parts.join(", "))
}

fn free_group_exactness() -> Outcome {
    let f2 = FreeGroup::new(2).map_err(err)?;
    let p = group_growth(&f2, 10, DEFAULT_ELEMENT_BUDGET)?;
    for (n, &s) in p.sizes.iter().enumerate() {
        ensure(s == 2 * 3u64.pow(n as u32) - 1, format!("beta({n}) = {s}"))?;
    }
    match classify_short(&p)? {
        GrowthClassification::Exponential { rate, .. } => {
            ensure((rate - 3f64.ln()).abs() <= 0.05, format!("rate {rate:.4}"))?;
            Ok(format!("sizes exact to n = 10, rate {rate:.4}"))
        }
        other => Err(format!("classified {other:?}")),
    }
}

fn nilpotent_formulas() -> Outcome {
    let start = Instant::now();
    let bg = bass_guivarch(&LowerCentralData::new(vec![2, 1]));
    let q = homogeneous_dimension(&GrowthVector::new(vec![2, 1, 1]).map_err(err)?);
    ensure(bg == 4 && q == 7, format!("{bg}, {q}"))?;
    let t = within_time(start, Duration::from_millis(100))?;
    Ok(format!(
        "ranks (2,1) -> {bg}, strata (2,1,1) -> {q}, {t:.2?}"
    ))
}

fn trend<G: Group>(g: &G, radii: &[u32]) -> Result<HyperbolicityProfile, String> {
    hyperbolicity_trend(
        g,
        &GeneratingSet::standard(g),
        radii,
        &DeltaOptions::default(),
        DEFAULT_ELEMENT_BUDGET,
    )
    .map_err(err)
}

fn hyperbolicity_contrast() -> Outcome {
    let z = trend(
        &FreeAbelian::new(1).map_err(err)?,
        &(1..=10).collect::<Vec<_>>(),
    )?;
    ensure(
        z.delta.iter().all(|&d| d == 0.0),
        format!("Z: {:?}", z.delta),
    )?;
    let f2 = trend(
        &FreeGroup::new(2).map_err(err)?,
        &(1..=5).collect::<Vec<_>>(),
    )?;
    ensure(
        f2.delta.iter().all(|&d| d == 0.0),
        format!("F2: {:?}", f2.delta),
    )?;
    let z2 = trend(
        &FreeAbelian::new(2).map_err(err)?,
        &(1..=12).collect::<Vec<_>>(),
    )?;
    let slope = match z2.trend {
        Trend::Growing { slope } if slope > 0.25 => slope,
        ref t => return Err(format!("Z^2 trend {t:?}")),
    };
    let sl = trend(&Sl2z, &(1..=8).collect::<Vec<_>>())?;
    let sl_max = sl.delta.iter().copied().fold(0.0, f64::max);
    ensure(sl_max <= 4.0, format!("SL2Z delta {:?}", sl.delta))?;
    Ok(format!(
        "Z, F2 delta 0; Z^2 slope {slope:.3}; SL2Z max delta {sl_max} (sampled to r = 8)"
    ))
}

fn profile(
    name: &str,
    growth: GrowthClassification,
    hyperbolicity: Option<HyperbolicityProfile>,
    window: String,
    ends: Option<usize>,
) -> SpaceProfile {
    SpaceProfile {
        name: name.into(),
        growth,
        hyperbolicity,
        window,
        seed: None,
        ends,
    }
}

fn group_profile<G: Group>(
    name: &str,
    g: &G,
    r: u32,
    delta_radii: Option<&[u32]>,
) -> Result<SpaceProfile, String> {
    let growth = classify_short(&group_growth(g, r, DEFAULT_ELEMENT_BUDGET)?)?;
    let hyp = delta_radii.map(|radii| trend(g, radii)).transpose()?;
    Ok(profile(
        name,
        growth,
        hyp,
        format!("ball(radius={r})"),
        None,
    ))
}

/// Nerve of the dyadic annuli on `R^k`; its index set is a half-line.
fn dyadic_profile(k: usize) -> Result<SpaceProfile, String> {
    let cover = DyadicAnnuli::new(k, 1).map_err(err)?;
    let window = Window::Range { lo: 0, hi: 40 };
    let nerve = build_nerve(&cover, &window).map_err(err)?;
    let g = nerve_growth_profile(&nerve, &0, 16).map_err(err)?;
    let ends = estimate_ends(&nerve, &0, 8);
    Ok(profile(
        &format!("dyadic R^{k}"),
        classify(&g)?,
        None,
        window.to_string(),
        ends,
    ))
}

fn grid_profile(k: usize, r: u32) -> Result<SpaceProfile, String> {
    let cover = UniformGrid::new(k).map_err(err)?;
    let window = Window::Box {
        radius: r as i64 + 2,
    };
    let nerve = build_nerve(&cover, &window).map_err(err)?;
    let base = LatticeIndex::new(&vec![0; k]);
    let g = nerve_growth_profile(&nerve, &base, r).map_err(err)?;
    let ends = estimate_ends(&nerve, &base, r / 2);
    Ok(profile(
        &format!("grid Z^{k}"),
        classify(&g)?,
        None,
        window.to_string(),
        ends,
    ))
}

fn obstruction_matrix() -> Outcome {
    let h3 = group_profile("H3", &DiscreteHeisenberg::new(1).map_err(err)?, 12, None)?;
    let z3 = group_profile("Z^3", &FreeAbelian::new(3).map_err(err)?, 12, None)?;
    let r = qi_obstruction_report(&h3, &z3);
    ensure(
        r.not_quasi_isometric(),
        format!("H3 vs Z^3: {:?}", r.verdict),
    )?;

    let radii: Vec<u32> = (1..=8).collect();
    let z2 = group_profile("Z^2", &FreeAbelian::new(2).map_err(err)?, 20, Some(&radii))?;
    let sl = group_profile("SL2Z", &Sl2z, 10, Some(&radii))?;
    let r = qi_obstruction_report(&z2, &sl);
    ensure(
        r.verdict.iter().any(|v| {
            matches!(v, Verdict::NoEmbeddingIntoHyperbolic { from, to } if from == "Z^2" && to == "SL2Z")
        }),
        format!("Z^2 vs SL2Z: {:?}", r.verdict),
    )?;

    for k in 2..=3 {
        let r = qi_obstruction_report(&dyadic_profile(k)?, &grid_profile(k, 12)?);
        ensure(
            r.not_quasi_isometric(),
            format!("dyadic vs grid k={k}: {:?}", r.verdict),
        )?;
    }

    let half = dyadic_profile(1)?;
    let line = grid_profile(1, 30)?;
    let r = qi_obstruction_report(&half, &line);
    ensure(r.is_inconclusive(), format!("N0 vs Z: {:?}", r.verdict))?;
    ensure(
        r.evidence.iter().any(|e| e.contains("half-line")),
        format!("N0 vs Z evidence: {:?}", r.evidence),
    )?;
    Ok(format!(
        "H3/Z^3 not QI; Z^2 -> SL2Z no embedding; dyadic/grid k=2,3 not QI; N0/Z inconclusive (ends {:?} vs {:?})",
        half.ends, line.ends
    ))
}

fn iwasawa_integral() -> Outcome {
    let start = Instant::now();
    let f = IwasawaFunction::PowerExp { k: 2 };
    let r = sl2_l1_norm(&f, &IwasawaDomain::default(), 1e-4).map_err(err)?;
    let exact = 2.0 * PI.powf(1.5);
    let rel = (r.value - exact).abs() / exact;
    ensure(rel <= 1e-3, format!("value {} rel {rel:.2e}", r.value))?;
    let t = within_time(start, Duration::from_secs(30))?;
    Ok(format!("{:.6} (rel {rel:.1e}), {t:.2?}", r.value))
}

fn gaussian_modulation() -> Outcome {
    let g = standard_gaussian(1);
    let lat = StftLattice {
        stride: 2,
        max_shift: 6.0,
    };
    let mut parts = Vec::new();
    for (p, exact) in [(2.0, 0.5f64.sqrt()), (1.0, 2f64.sqrt())] {
        let r = modulation_norm_refined(&g, &g, 6.0, 0.125, &lat, p, p, 1e-4).map_err(err)?;
        ensure(
            (r.value - exact).abs() <= 1e-4,
            format!("M^{{{p},{p}}} = {}", r.value),
        )?;
        parts.push(format!("M^{p},{p} = {:.8}", r.value));
    }
    Ok(parts.join(", "))
}

fn gaussian(width: f64, center: f64, modulation: f64) -> Preset {
    Preset::Gaussian {
        dim: 1,
        width,
        amplitude: 1.0,
        center: Some(vec![center]),
        modulation: Some(vec![modulation]),
    }
}

fn tensor_factorization() -> Outcome {
    let pairs = [
        (gaussian(1.0, 0.0, 0.0), gaussian(1.5, 0.5, 0.0)),
        (gaussian(1.2, 0.3, 0.5), gaussian(0.8, -0.2, -0.75)),
    ];
    let lat = StftLattice {
        stride: 4,
        max_shift: 4.0,
    };
    let mut worst = 0.0f64;
    for (f, eta) in &pairs {
        for p in [1.0, 2.0] {
            let r = tensor_embedding(f, eta, 5.0, 0.125, &lat, p, p, 1e-4).map_err(err)?;
            ensure(
                r.relative_error <= 1e-4,
                format!("p={p}: rel {:.2e}", r.relative_error),
            )?;
            worst = worst.max(r.relative_error);
        }
    }
    let grid = Grid::symmetric(1, 3.0, 0.125).map_err(err)?;
    let f = gaussian(0.9, -0.4, 0.25).sample(&grid);
    let eta = Preset::Bump {
        dim: 1,
        center: None,
        radius: 1.5,
    };
    let two = gamma_lift(&f, &eta, &grid, 2).map_err(err)?;
    let three = gamma_lift(&two, &eta, &grid, 3).map_err(err)?;
    let direct = gamma_lift(&f, &eta, &grid, 3).map_err(err)?;
    let gap = three
        .values()
        .iter()
        .zip(direct.values())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    ensure(gap <= 1e-6, format!("coherence gap {gap:.2e}"))?;
    Ok(format!(
        "worst norm mismatch {worst:.1e}, coherence gap {gap:.1e}"
    ))
}

fn dyadic_power() -> Outcome {
    let f = Preset::Exponential { dim: 1, rate: 1.0 };
    let mut parts = Vec::new();
    for n in [1usize, 2] {
        for p in [1.0, 2.0] {
            let opts = PowerEmbeddingOptions::for_dimension(n);
            let r = dyadic_power_embedding(n, &f, p, p, 0.0, &opts).map_err(err)?;
            let expected = (PI.powf(n as f64 / 2.0)
                / statrs::function::gamma::gamma(1.0 + n as f64 / 2.0))
            .powf(1.0 / p);
            let ratio = r.ratio.ok_or("no ratio")?;
            let rel = (ratio - expected).abs() / expected;
            ensure(rel <= 1e-3, format!("n={n} p={p}: {ratio} vs {expected}"))?;
            ensure(
                r.qi_fit.dominated_by(n as f64, 1.0),
                format!("n={n}: fit ({}, {})", r.qi_fit.l, r.qi_fit.c),
            )?;
            ensure(
                r.scaled_index_map.is_bijection(),
                format!("n={n}: scaled map"),
            )?;
            if n >= 2 {
                ensure(
                    !r.unscaled_index_map.is_bijection(),
                    format!("n={n}: unscaled map"),
                )?;
            }
            parts.push(format!("n={n} p={p} rel {rel:.1e}"));
        }
    }
    Ok(parts.join("; "))
}

fn brute_force_sizes<G: Group>(g: &G, r: u32) -> Vec<usize> {
    let gens = GeneratingSet::standard(g);
    let mut level = vec![g.identity()];
    let mut all: BTreeSet<G::Elem> = level.iter().cloned().collect();
    let mut sizes = vec![1];
    for _ in 0..r {
        level = level
            .iter()
            .flat_map(|w| gens.elements().iter().map(|s| g.multiply(w, s)))
            .collect();
        all.extend(level.iter().cloned());
        sizes.push(all.len());
    }
    sizes
}

fn bfs_matches<G: Group>(g: &G) -> Result<(), String> {
    let b = ball(g, &GeneratingSet::standard(g), 4, DEFAULT_ELEMENT_BUDGET).map_err(err)?;
    let got: Vec<usize> = b.sizes().iter().map(|&s| s as usize).collect();
    ensure(
        got == brute_force_sizes(g, 4),
        format!("{}: {got:?}", g.name()),
    )
}

fn word_metric_axioms<G: Group>(g: &G, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let gens = GeneratingSet::standard(g);
    let mut sample = vec![g.identity()];
    for _ in 0..40 {
        let mut x = g.identity();
        for _ in 0..rng.random_range(0..6) {
            x = g.multiply(&x, &gens.elements()[rng.random_range(0..gens.len())]);
        }
        if !sample.contains(&x) {
            sample.push(x);
        }
    }
    let dm = distance_matrix(g, &gens, &sample, 12, DEFAULT_ELEMENT_BUDGET).map_err(err)?;
    dm.check_metric().map_err(|e| format!("{}: {e}", g.name()))
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);

    // partition of unity
    let mut worst = 0.0f64;
    let grid2 = GridBapu::new(2, Order::Two).map_err(err)?;
    let dyadic2 = DyadicBapu::new(2, 1, 0.25, Order::Two).map_err(err)?;
    for _ in 0..2000 {
        let x = [rng.random_range(-20.0..20.0), rng.random_range(-20.0..20.0)];
        let a: f64 = grid2
            .indices_meeting(&x, &x)
            .iter()
            .map(|i| grid2.eval(i, &x))
            .sum();
        let b: f64 = dyadic2
            .indices_meeting(&x, &x)
            .iter()
            .map(|i| dyadic2.eval(i, &x))
            .sum();
        worst = worst.max((a - 1.0).abs()).max((b - 1.0).abs());
    }
    ensure(worst <= 1e-12, format!("partition defect {worst:.2e}"))?;

    // clustering map bound
    let nerve = build_nerve(
        &UniformGrid::new(2).map_err(err)?,
        &Window::Box { radius: 6 },
    )
    .map_err(err)?;
    let n_q = nerve.admissibility_constant() as f64;
    for q in [1.0, 2.0, 3.5] {
        for _ in 0..50 {
            let a: Vec<f64> = (0..nerve.len())
                .map(|_| rng.random_range(-1.0..1.0))
                .collect();
            let ga = clustering_map(&a, &nerve).map_err(err)?;
            let lq = |v: &[f64]| v.iter().map(|x| x.abs().powf(q)).sum::<f64>().powf(1.0 / q);
            ensure(
                lq(&ga) <= n_q * lq(&a) * (1.0 + 1e-12),
                format!("q={q}: bound fails"),
            )?;
        }
    }

    // solidity
    let grid = Grid::symmetric(1, 6.0, 1.0 / 16.0).map_err(err)?;
    let bapu = GridBapu::new(1, Order::Two).map_err(err)?;
    let global = GlobalNorm::unweighted(2.0);
    for _ in 0..20 {
        let big: Vec<f64> = (0..grid.len())
            .map(|_| rng.random_range(0.0..1.0))
            .collect();
        let small: Vec<Complex64> = big
            .iter()
            .map(|&b| {
                Complex64::from_polar(b * rng.random_range(0.0..1.0), rng.random_range(0.0..6.3))
            })
            .collect();
        let g = SampledFunction::new(
            grid.clone(),
            big.iter().map(|&b| Complex64::new(b, 0.0)).collect(),
        )
        .map_err(err)?;
        let f = SampledFunction::new(grid.clone(), small).map_err(err)?;
        let nf = decomposition_norm(&f, &bapu, 1.5, NormMode::Lp, &global).map_err(err)?;
        let ng = decomposition_norm(&g, &bapu, 1.5, NormMode::Lp, &global).map_err(err)?;
        ensure(
            nf.global <= ng.global,
            format!("solidity {} > {}", nf.global, ng.global),
        )?;
    }

    // metric axioms
    word_metric_axioms(&FreeAbelian::new(2).map_err(err)?, &mut rng)?;
    word_metric_axioms(&DiscreteHeisenberg::new(1).map_err(err)?, &mut rng)?;
    word_metric_axioms(&FreeGroup::new(2).map_err(err)?, &mut rng)?;
    word_metric_axioms(&Sl2z, &mut rng)?;
    let cover = UniformGrid::new(2).map_err(err)?;
    let nerve = build_nerve(&cover, &Window::Box { radius: 6 }).map_err(err)?;
    let pts: Vec<_> = (0..30)
        .map(|_| rational_point(&[rng.random_range(-20..=20), rng.random_range(-20..=20)], 4))
        .collect();
    let mut rows = Vec::new();
    for x in &pts {
        let from = ChainDistances::new(&cover, &nerve, x).map_err(err)?;
        rows.push(
            pts.iter()
                .map(|y| from.to(y).map(f64::from))
                .collect::<Result<Vec<_>, _>>()
                .map_err(err)?,
        );
    }
    let dm = coarse_core::DistanceMatrix::from_fn(pts.len(), |i, j| rows[i][j]);
    let dedup: BTreeSet<_> = pts.iter().collect();
    if dedup.len() == pts.len() {
        dm.check_metric()
            .map_err(|e| format!("chain metric: {e}"))?;
    }

    // balls
    bfs_matches(&FreeAbelian::new(2).map_err(err)?)?;
    bfs_matches(&DiscreteHeisenberg::new(1).map_err(err)?)?;
    bfs_matches(&FreeGroup::new(2).map_err(err)?)?;
    bfs_matches(&Sl2z)?;
    bfs_matches(&EngelLattice)?;

    Ok(format!(
        "partition defect {worst:.1e}, N_Q = {n_q}, all suites green"
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("chebyshev law on Z^k nets", chebyshev_law),
        ("H3 growth degree", heisenberg_growth),
        ("Z^k growth degrees", lattice_degrees),
        ("free group exact growth", free_group_exactness),
        (
            "Bass-Guivarc'h and homogeneous dimension",
            nilpotent_formulas,
        ),
        ("hyperbolicity contrast", hyperbolicity_contrast),
        ("obstruction matrix", obstruction_matrix),
        ("Iwasawa integral", iwasawa_integral),
        ("Gaussian modulation norms", gaussian_modulation),
        ("tensor factorization", tensor_factorization),
        ("dyadic power embedding", dyadic_power),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{t:.1?}]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{t:.1?}]", k + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
