//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every line reaches the terminal.
//! The process fails only when the set of red criteria differs from
//! `EXPECTED_RED`.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cfi_lasserre::cfi::{build_x, build_y, parity_isomorphism, verify_isomorphism, CfiPair, CfiVertexId, TwistFunction};
use cfi_lasserre::fourier::{h_of_sigma, SparseBoolFn};
use cfi_lasserre::graph::{
    cluster, cutwidth, enumerate, expansion_bounds, expansion_exact, graph_width, named, random_3regular, subdivide,
    verify_stretching,
};
use cfi_lasserre::iso::{automorphisms, find_isomorphism, wl_refine, IsoOutcome, SearchBudget, WlVerdict};
use cfi_lasserre::lasserre::{verify_all, verify_l2, vectors_from_isomorphisms, L2Case, LasserreInstance, LasserreVector};
use cfi_lasserre::resolution::{refutation_width, ClassTable, EdgeSet, ProjectedSystem, Sign};
use cfi_lasserre::xor::{build_phi, meet_opt, PartialIso};
use cfi_lasserre::{ColoredGraph, Rational};
use cfi_lasserre_cli::{pipeline, BudgetArgs, GraphArgs, GraphSource, LasserreArgs, Mode, TwistArgs};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

/// Criteria known to fail: cutwidth >= Ex * n / 2 is false for odd n (K3).
const EXPECTED_RED: &[usize] = &[8];

/// Vector coordinates and inner products are compared exactly.
const EXACT: f64 = 0.0;
/// Float-mode comparisons in the isomorphism family.
const FLOAT_TOL: f64 = 1e-9;
/// Largest stretching checked exhaustively; bigger ones are sampled.
const STRETCH_FULL: usize = 20;
/// Largest derived graph whose exact expansion is computed.
const DERIVED_MAX: usize = 26;
/// Sample count for the subset bound on X_f(K4).
const CFI_SAMPLES: usize = 100_000;

type Check = fn() -> Result<String, String>;

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Duration,
    check: Check,
}

fn r(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn signed(s: Sign, x: Rational) -> Rational {
    if s.is_minus() {
        -x
    } else {
        x
    }
}

fn golden_vectors() -> Result<String, String> {
    let k4 = named::complete(4);
    let f = TwistFunction::zero(6);
    let g = TwistFunction::on_edges(6, &[0, 5]).map_err(err)?;
    let sys = ProjectedSystem::from_xor(&build_phi(&k4, &f, &g).map_err(err)?).map_err(err)?;
    let table = ClassTable::with_budgets(&sys, 3, 3).map_err(err)?;
    let inst = LasserreInstance::new(CfiPair::build(&k4, &f, &g).map_err(err)?, table, 1).map_err(err)?;
    let pair = inst.pair();
    let (mut edges, mut middles) = (0, 0);
    for i in 0..pair.vertex_count() {
        for t in pair.same_color_targets(i) {
            let got = inst.build_vector(&PartialIso::single(i, t)).map_err(err)?;
            let mut want = LasserreVector::zero();
            match (pair.xf.id(i), pair.xg.id(t)) {
                (CfiVertexId::Edge { v, u, bit: b }, CfiVertexId::Edge { bit: c, .. }) => {
                    let (class, gamma) = inst.table().gamma_directed(v, u).ok_or("edge without class")?;
                    let flip = if b != c { Sign::Minus } else { Sign::Plus };
                    want.accumulate(inst.empty_class(), r(1, 2));
                    want.accumulate(class, signed(flip * gamma, r(1, 2)));
                    edges += 1;
                }
                (CfiVertexId::Middle { v, bits }, CfiVertexId::Middle { bits: img, .. }) => {
                    want.accumulate(inst.empty_class(), r(1, 4));
                    for (k, &u) in pair.base().neighbors(v).iter().enumerate() {
                        let (class, gamma) = inst.table().gamma_directed(v, u).ok_or("edge without class")?;
                        let flip = if (bits ^ img) >> k & 1 == 1 { Sign::Minus } else { Sign::Plus };
                        want.accumulate(class, signed(flip * gamma, r(1, 4)));
                    }
                    ensure(got.support_len() == 4, || format!("middle vector {i}->{t} has {} coordinates", got.support_len()))?;
                    middles += 1;
                }
                _ => return Err(format!("{i}->{t} mixes vertex kinds")),
            }
            ensure(got.close_to(&want, EXACT) && got == want, || format!("vector of {i}->{t} differs"))?;
        }
    }
    ensure(edges == 48 && middles == 64, || format!("{edges} edge and {middles} middle maps"))?;
    Ok(format!("{edges} edge-pair and {middles} middle vectors match"))
}

fn l2_case_table() -> Result<String, String> {
    let p = named::petersen();
    let f = TwistFunction::zero(15);
    let g = TwistFunction::odd(15);
    let sys = ProjectedSystem::from_xor(&build_phi(&p, &f, &g).map_err(err)?).map_err(err)?;
    // rw(Petersen) = 6 leaves no r with level 1; budgets (3, 3) are the override
    let table = ClassTable::with_budgets(&sys, 3, 3).map_err(err)?;
    let inst = LasserreInstance::new(CfiPair::build(&p, &f, &g).map_err(err)?, table, 1).map_err(err)?;
    let rep = verify_l2(&inst).map_err(err)?;
    ensure(rep.passed(), || format!("{} rows miss A_ij", rep.failures.len()))?;
    ensure(rep.case(L2Case::Separate).nonzero_values.is_empty(), || "case 1 has nonzero terms".into())?;
    ensure(rep.case(L2Case::Gadget).nonzero_values == vec![r(1, 4)], || "case 2 values".into())?;
    ensure(rep.case(L2Case::Crossing).nonzero_values == vec![r(1, 2)], || "case 3 values".into())?;
    Ok(format!("{} pairs; case 2 {{1/4}}, case 3 {{1/2}}", rep.pairs))
}

fn level_one_instance() -> Result<String, String> {
    let base = random_3regular(46, 1).map_err(err)?;
    let m = base.edge_count();
    let (f, g) = (TwistFunction::zero(m), TwistFunction::odd(m));
    let sys = ProjectedSystem::from_xor(&build_phi(&base, &f, &g).map_err(err)?).map_err(err)?;
    let rw = refutation_width(&sys, 9).map_err(err)?;
    ensure(rw.exceeds(9), || format!("refutation width {rw:?} on n = 46"))?;
    let inst = LasserreInstance::from_r(&base, &f, &g, 9).map_err(err)?;
    ensure(inst.level() == 1, || format!("level {}", inst.level()))?;
    let rep = verify_all(&inst, 2000, 1).map_err(err)?;
    ensure(rep.passed(), || "level-1 verification failed".into())?;
    let k4 = named::complete(4);
    let small = LasserreInstance::from_r(&k4, &TwistFunction::zero(6), &TwistFunction::odd(6), 3).map_err(err)?;
    ensure(verify_all(&small, 100, 1).map_err(err)?.passed(), || "K4 level 0".into())?;
    Ok(format!("n = 46, r = 9, {} classes, level 1 (l1)-(l5) exact; K4 level 0", rep.classes))
}

fn non_isomorphism() -> Result<String, String> {
    let k4 = named::complete(4);
    let zero = TwistFunction::zero(6);
    let odd = TwistFunction::odd(6);
    let same = TwistFunction::on_edges(6, &[2, 4]).map_err(err)?;
    let budget = SearchBudget::default();
    let x0 = build_x(&k4, &zero).map_err(err)?;
    let x1 = build_x(&k4, &odd).map_err(err)?;
    let xs = build_x(&k4, &same).map_err(err)?;
    let opposite = find_isomorphism(x0.graph(), x1.graph(), budget);
    ensure(opposite.outcome == IsoOutcome::NoneComplete, || format!("opposite parity: {:?}", opposite.outcome))?;
    let built = parity_isomorphism(&k4, &zero, &same).map_err(err)?;
    verify_isomorphism(x0.graph(), xs.graph(), &built).map_err(err)?;
    let cert = find_isomorphism(x0.graph(), xs.graph(), budget);
    let found = cert.map().ok_or("same parity: no certificate")?;
    let autos = automorphisms(xs.graph(), 4096, budget).map_err(err)?;
    let mut inverse = vec![0; built.len()];
    for (v, &w) in built.iter().enumerate() {
        inverse[w] = v;
    }
    let delta: Vec<usize> = (0..built.len()).map(|w| found[inverse[w]]).collect();
    ensure(autos.binary_search(&delta).is_ok(), || "certificate is not the constructed map up to automorphism".into())?;
    let y0 = build_y(&k4, &zero).map_err(err)?;
    let y1 = build_y(&k4, &odd).map_err(err)?;
    let y = find_isomorphism(&y0.without_colors(), &y1.without_colors(), budget);
    ensure(y.outcome == IsoOutcome::NoneComplete, || format!("uncolored Y: {:?}", y.outcome))?;
    Ok(format!("opposite none-found ({} nodes); same parity matches up to {} automorphisms; Y none-found ({} nodes)", opposite.nodes, autos.len(), y.nodes))
}

/// Connected graphs on 2 to 8 vertices.
fn small_graphs() -> Vec<ColoredGraph> {
    (2..=8).flat_map(enumerate::connected_graphs).collect()
}

fn odd_system(g: &ColoredGraph) -> Result<ProjectedSystem, String> {
    ProjectedSystem::from_edges(g.vertex_count(), g.edges(), EdgeSet::singleton(0)).map_err(err)
}

fn width_vs_cutwidth() -> Result<String, String> {
    let mut checked = 0;
    for g in small_graphs() {
        let cw = cutwidth(&g).map_err(err)?.0;
        let rw = refutation_width(&odd_system(&g)?, g.edge_count()).map_err(err)?;
        ensure(rw.lower_bound() >= cw, || format!("{:?}: {rw:?} < cutwidth {cw}", g.edges()))?;
        checked += 1;
    }
    Ok(format!("{checked} graphs, 0 violations"))
}

fn cutwidth_is_width() -> Result<String, String> {
    let mut checked = 0;
    for g in enumerate::connected_graphs_up_to(7) {
        let (cw, w) = (cutwidth(&g).map_err(err)?.0, graph_width(&g).map_err(err)?);
        ensure(cw == w, || format!("{:?}: cutwidth {cw}, width {w}", g.edges()))?;
        checked += 1;
    }
    Ok(format!("{checked} graphs, 0 discrepancies"))
}

/// Subdivision counts for `g` keeping the result within `max` vertices.
fn stretch_counts(g: &ColoredGraph, max: usize) -> Vec<usize> {
    let mut room = max.saturating_sub(g.vertex_count());
    (0..g.edge_count())
        .map(|e| {
            let c = [1, 2, 0][e % 3].min(room);
            room -= c;
            c
        })
        .collect()
}

fn stretch_ok(g: &ColoredGraph, counts: &[usize]) -> Result<bool, String> {
    let (h, w) = subdivide(g, counts).map_err(err)?;
    if !verify_stretching(g, &h, &w).map_err(err)? {
        return Ok(false);
    }
    let ex = expansion_exact(g).map_err(err)?.value;
    let s = Rational::from_integer(g.max_degree() as i128);
    let k = Rational::from_integer(w.k as i128);
    let t1 = Rational::from_integer(w.t as i128 + 1);
    let bound = (Rational::from_integer(2) * ex / (s * k)).min(ex / t1);
    Ok(expansion_exact(&h).map_err(err)?.value >= bound)
}

fn expansion_bounds_hold() -> Result<String, String> {
    let graphs = small_graphs();
    let (mut clustered, mut outside, mut outside_bad) = (0, 0, 0);
    for g in &graphs {
        let cl = cluster(g);
        let bounded = cl.vertex_count() <= DERIVED_MAX;
        let hyp = g.min_degree() >= 3;
        // outside the min-degree hypothesis: counted, not required
        if !(bounded && (hyp || cl.vertex_count() <= STRETCH_FULL)) {
            continue;
        }
        let ex = expansion_exact(g).map_err(err)?.value;
        let holds = expansion_exact(&cl).map_err(err)?.value >= ex / Rational::from_integer(g.max_degree() as i128);
        if hyp {
            ensure(holds, || format!("clustering bound fails on {:?}", g.edges()))?;
            clustered += 1;
        } else {
            outside += 1;
            outside_bad += usize::from(!holds);
        }
    }
    let mut stretched = 0;
    for (idx, g) in graphs.iter().enumerate() {
        ensure(stretch_ok(g, &stretch_counts(g, STRETCH_FULL))?, || format!("stretch bound fails on {:?}", g.edges()))?;
        stretched += 1;
        if g.vertex_count() == 8 && idx % 100 == 0 && g.vertex_count() + g.edge_count() <= DERIVED_MAX {
            ensure(stretch_ok(g, &vec![1; g.edge_count()])?, || format!("full subdivision fails on {:?}", g.edges()))?;
            stretched += 1;
        }
    }
    let k4 = named::complete(4);
    let ex = expansion_exact(&k4).map_err(err)?.value;
    let x = build_x(&k4, &TwistFunction::zero(6)).map_err(err)?;
    let b = expansion_bounds(x.graph(), CFI_SAMPLES, 1).map_err(err)?;
    ensure(b.upper >= ex / Rational::from_integer(54), || format!("sampled subset with expansion {}", b.upper))?;
    ensure(b.lower > 0.0, || "spectral bound is zero".into())?;
    Ok(format!(
        "clustering {clustered} graphs (min degree >= 3), {outside_bad}/{outside} fail outside it; {stretched} stretchings; X_f(K4) min sampled {} >= {}/54, spectral {:.4}",
        b.upper, ex, b.lower
    ))
}

fn cutwidth_expansion() -> Result<String, String> {
    let mut graphs = small_graphs();
    graphs.extend([named::petersen(), named::prism(), named::complete_bipartite(3, 3)]);
    for n in (10..=22).step_by(2) {
        for seed in 0..3 {
            graphs.push(random_3regular(n, seed).map_err(err)?);
        }
    }
    let mut bad = Vec::new();
    for g in &graphs {
        let cw = cutwidth(g).map_err(err)?.0;
        let ex = expansion_exact(g).map_err(err)?.value;
        if Rational::from_integer(cw as i128) < ex * Rational::new(g.vertex_count() as i128, 2) {
            bad.push(g);
        }
    }
    let first = bad.first().map(|g| format!("; first {:?}", g.edges())).unwrap_or_default();
    let even = bad.iter().filter(|g| g.vertex_count() % 2 == 0).count();
    ensure(bad.is_empty(), || format!("{} violations out of {} ({even} with even n){first}", bad.len(), graphs.len()))?;
    Ok(format!("{} graphs, 0 violations", graphs.len()))
}

fn wl_failure() -> Result<String, String> {
    let mut out = Vec::new();
    for (name, base) in [("K4", named::complete(4)), ("Petersen", named::petersen())] {
        let m = base.edge_count();
        let (f, g) = (TwistFunction::zero(m), TwistFunction::odd(m));
        let (y0, y1) = (build_y(&base, &f).map_err(err)?, build_y(&base, &g).map_err(err)?);
        for k in 1..=2 {
            let v = wl_refine(&y0, &y1, k).map_err(err)?.verdict;
            ensure(v == WlVerdict::Indistinguishable, || format!("{name}: {k}-WL {v:?}"))?;
        }
        let (x0, x1) = (build_x(&base, &f).map_err(err)?, build_x(&base, &g).map_err(err)?);
        let cert = find_isomorphism(x0.graph(), x1.graph(), SearchBudget::default());
        ensure(cert.outcome == IsoOutcome::NoneComplete, || format!("{name}: search {:?}", cert.outcome))?;
        out.push(format!("{name} ({} nodes)", cert.nodes));
    }
    Ok(format!("1-WL and 2-WL indistinguishable, search none-found: {}", out.join(", ")))
}

type F = SparseBoolFn<Rational>;

fn fourier_oracle() -> Result<String, String> {
    const AMBIENT: usize = 12;
    let all = EdgeSet::from_indices(&(0..AMBIENT).collect::<Vec<_>>());
    let point = |x: usize| EdgeSet::from_bits(x as u128);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut juntas = 0;
    for k in 0..=AMBIENT {
        let bits: Vec<usize> = rand::seq::index::sample(&mut rng, AMBIENT, k).into_vec();
        let set = EdgeSet::from_indices(&bits);
        let ta: Vec<i128> = (0..1 << AMBIENT).map(|_| rng.gen_range(-3..=3)).collect();
        let tb: Vec<i128> = (0..1 << AMBIENT).map(|_| rng.gen_range(-3..=3)).collect();
        // a k-junta: the value depends on x restricted to `set`
        let va = |x: EdgeSet| Rational::from_integer(ta[x.intersection(set).bits() as usize]);
        let vb = |x: EdgeSet| Rational::from_integer(tb[x.intersection(set).bits() as usize]);
        let a = F::from_truth_table(AMBIENT, set, va).map_err(err)?;
        let b = F::from_truth_table(AMBIENT, set, vb).map_err(err)?;
        let (sum, prod) = (a.add(&b).map_err(err)?, a.multiply(&b).map_err(err)?);
        for x in (0..1 << AMBIENT).map(point) {
            ensure(a.evaluate(x) == va(x), || format!("{k}-junta evaluation at {x:?}"))?;
            ensure(sum.evaluate(x) == va(x) + vb(x), || format!("{k}-junta sum at {x:?}"))?;
            ensure(prod.evaluate(x) == va(x) * vb(x), || format!("{k}-junta product at {x:?}"))?;
        }
        ensure(a.relevant_bits().is_subset(set) && set.is_subset(all), || "relevant bits".into())?;
        juntas += 1;
    }
    let three = EdgeSet::from_indices(&[0, 1, 2]);
    for table in 0u32..256 {
        let v = |x: EdgeSet| Rational::from_integer((table >> x.bits()) as i128 & 1);
        let h = F::from_truth_table(3, three, v).map_err(err)?;
        ensure((0..8).map(point).all(|x| h.evaluate(x) == v(x)), || format!("3-bit table {table}"))?;
    }
    let k4 = named::complete(4);
    let pair = CfiPair::build(&k4, &TwistFunction::zero(6), &TwistFunction::odd(6)).map_err(err)?;
    let mut family = vec![PartialIso::empty()];
    for i in 0..pair.vertex_count() {
        family.extend(pair.same_color_targets(i).into_iter().map(|t| PartialIso::single(i, t)));
    }
    let hs: Vec<F> = family.iter().map(|s| h_of_sigma(&pair, s)).collect::<Result<_, _>>().map_err(err)?;
    let mut products = 0;
    for (s1, h1) in family.iter().zip(&hs) {
        for (s2, h2) in family.iter().zip(&hs) {
            let want = match meet_opt(Some(s1), Some(s2)) {
                Some(m) => h_of_sigma(&pair, &m).map_err(err)?,
                None => F::zero(6),
            };
            ensure(h1.multiply(h2).map_err(err)? == want, || format!("h products for {s1} and {s2}"))?;
            products += 1;
        }
    }
    Ok(format!("{juntas} juntas on 2^12 points, 256 three-bit tables, {products} h products"))
}

fn relaxation_sanity() -> Result<String, String> {
    let k4 = named::complete(4);
    let f = TwistFunction::zero(6);
    let g = TwistFunction::on_edges(6, &[1, 2]).map_err(err)?;
    let pair = CfiPair::build(&k4, &f, &g).map_err(err)?;
    let pi = parity_isomorphism(&k4, &f, &g).map_err(err)?;
    let autos = automorphisms(pair.xg.graph(), 64, SearchBudget::default()).map_err(err)?;
    let other: Vec<usize> = pi.iter().map(|&x| autos[1][x]).collect();
    let isos = [pi, other];
    let level = 3.min(pair.vertex_count());
    let exact = vectors_from_isomorphisms(pair.xf.graph(), pair.xg.graph(), &isos, &[r(9, 25), r(16, 25)], EXACT)
        .map_err(err)?
        .verify(level, 2000, 11);
    ensure(exact.exact && exact.passed(), || format!("exact family: {exact:?}"))?;
    let third = 1.0 / 3.0;
    let float = vectors_from_isomorphisms(pair.xf.graph(), pair.xg.graph(), &isos, &[third, 1.0 - third], FLOAT_TOL)
        .map_err(err)?
        .verify(level, 2000, 11);
    ensure(float.passed(), || format!("float family: {float:?}"))?;
    Ok(format!("weights 9/25, 16/25 exact at level {level}; 1/3, 2/3 within {FLOAT_TOL:e}"))
}

fn determinism() -> Result<String, String> {
    let graph = GraphArgs { source: GraphSource { graph: None, random: Some(20), named: None }, seed: 3 };
    let twist = TwistArgs { twist: "odd".into() };
    let lasserre = LasserreArgs { width: None, level: None, samples: 2000, mode: Mode::Exact, tol: FLOAT_TOL };
    let budget = BudgetArgs { nodes: 1_000_000, time: 120 };
    let run = || -> Result<Value, String> {
        let mut v = pipeline(&graph, &twist, &lasserre, &budget).map_err(|f| f.message)?;
        v.as_object_mut().ok_or("report is not an object")?.remove("timestamp");
        Ok(v)
    };
    let (a, b) = (run()?, run()?);
    ensure(a == b, || "reports differ".into())?;
    Ok(format!("{} bytes, identical", a.to_string().len()))
}

fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion { id: 1, name: "golden vectors", limit: secs(1), check: golden_vectors },
        Criterion { id: 2, name: "(l2) case table", limit: secs(120), check: l2_case_table },
        Criterion { id: 3, name: "level-1 instance", limit: secs(300), check: level_one_instance },
        Criterion { id: 4, name: "non-isomorphism", limit: secs(120), check: non_isomorphism },
        Criterion { id: 5, name: "width >= cutwidth", limit: secs(300), check: width_vs_cutwidth },
        Criterion { id: 6, name: "cutwidth = width", limit: secs(300), check: cutwidth_is_width },
        Criterion { id: 7, name: "expansion bounds", limit: secs(300), check: expansion_bounds_hold },
        Criterion { id: 8, name: "cutwidth vs expansion", limit: secs(300), check: cutwidth_expansion },
        Criterion { id: 9, name: "WL failure", limit: secs(300), check: wl_failure },
        Criterion { id: 10, name: "Fourier oracle", limit: secs(300), check: fourier_oracle },
        Criterion { id: 11, name: "relaxation sanity", limit: secs(120), check: relaxation_sanity },
        Criterion { id: 12, name: "determinism", limit: secs(300), check: determinism },
    ]
}

fn main() -> ExitCode {
    // `cargo test -- --list` and filters target libtest; there is nothing to list
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    // numeric arguments pick a subset; the verdict then covers only that subset
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let chosen: Vec<Criterion> = criteria().into_iter().filter(|c| only.is_empty() || only.contains(&c.id)).collect();
    let total = chosen.len();
    panic::set_hook(Box::new(|_| {}));
    let mut red = Vec::new();
    for c in chosen {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > c.limit => Err(format!("over the {:?} limit; {detail}", c.limit)),
            other => other,
        };
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                red.push(c.id);
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {tag} {:>8.2}s  {}: {detail}", c.id, took.as_secs_f64(), c.name);
    }
    let expected_red: Vec<usize> =
        EXPECTED_RED.iter().copied().filter(|id| only.is_empty() || only.contains(id)).collect();
    let expected = red == expected_red;
    println!(
        "acceptance: {} of {total} pass; red {:?} ({})",
        total - red.len(),
        red,
        if expected { "as expected" } else { "unexpected" }
    );
    if expected {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
