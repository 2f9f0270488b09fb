use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, RwLock};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::vector::LasserreVector;
use crate::cfi::{CfiPair, CfiVertexId, TwistFunction};
use crate::error::{Error, Result};
use crate::fourier::{h_of_sigma_with, Collapse};
use crate::graph::ColoredGraph;
use crate::report;
use crate::resolution::{build_class_table, ClassTable, EdgeSet, Sign};
use crate::xor::{build_phi, is_harmonious, PartialIso};
use crate::Rational;

/// Cap on enumerated families before the verifiers switch to sampling.
pub const FAMILY_CAP: usize = 20_000;

/// A CFI pair with its class table, ready to produce vectors `v_σ` for
/// `|dom σ| ≤ level`.
#[derive(Debug)]
pub struct LasserreInstance {
    pair: CfiPair,
    table: Arc<ClassTable>,
    level: usize,
    collapse: Collapse,
    empty_class: usize,
    cache: RwLock<VectorCache>,
}

type VectorCache = HashMap<Vec<(usize, usize)>, Arc<LasserreVector>>;

/// Meet key with the inner product and chain value of one pair.
type PairValues = (Option<Vec<(usize, usize)>>, Rational, Rational);

impl LasserreInstance {
    pub fn new(pair: CfiPair, table: ClassTable, level: usize) -> Result<Self> {
        let base = pair.base();
        let twist: Vec<usize> = (0..base.edge_count()).filter(|&e| pair.f().get(e) ^ pair.g().get(e)).collect();
        if table.system().edges() != base.edges() || table.system().twist() != EdgeSet::from_indices(&twist) {
            return Err(Error::InvalidParameter("class table belongs to a different system".into()));
        }
        if 3 * level > table.size_budget() {
            return Err(Error::InvalidParameter(format!(
                "level {level} needs a size budget of at least {}, table has {}",
                3 * level,
                table.size_budget()
            )));
        }
        let empty_class = table.class_of(EdgeSet::EMPTY).expect("empty set is always indexed");
        Ok(Self {
            pair,
            table: Arc::new(table),
            level,
            collapse: Collapse::Oriented,
            empty_class,
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Classes for parameter `r` and level `⌊r/9⌋`.
    pub fn from_r(base: &ColoredGraph, f: &TwistFunction, g: &TwistFunction, r: usize) -> Result<Self> {
        let pair = CfiPair::build(base, f, g)?;
        let table = build_class_table(&build_phi(base, f, g)?, r)?;
        Self::new(pair, table, r / 9)
    }

    /// Switches how directed variables become edge bits; clears the cache.
    pub fn with_collapse(mut self, collapse: Collapse) -> Self {
        self.collapse = collapse;
        self.cache = RwLock::new(HashMap::new());
        self
    }

    pub fn pair(&self) -> &CfiPair {
        &self.pair
    }

    pub fn table(&self) -> &ClassTable {
        &self.table
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn empty_class(&self) -> usize {
        self.empty_class
    }

    /// Largest domain whose `h_σ` stays inside the size budget.
    pub fn budget_domain(&self) -> usize {
        self.table.size_budget() / 3
    }

    pub fn build_vector(&self, sigma: &PartialIso) -> Result<LasserreVector> {
        if sigma.len() > self.level {
            return Err(Error::LevelExceeded { dom: sigma.len(), level: self.level });
        }
        Ok((*self.vector(sigma)?).clone())
    }

    /// `v_σ` for any `σ` within the size budget, cached.
    pub fn vector(&self, sigma: &PartialIso) -> Result<Arc<LasserreVector>> {
        if sigma.len() > self.budget_domain() {
            return Err(Error::LevelExceeded { dom: sigma.len(), level: self.budget_domain() });
        }
        let key = sigma.key();
        if let Some(v) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(Arc::clone(v));
        }
        let v = Arc::new(self.compute(sigma)?);
        self.cache.write().expect("cache lock").insert(key, Arc::clone(&v));
        Ok(v)
    }

    /// The zero vector for `⊥`.
    pub fn meet_vector(&self, sigma: Option<&PartialIso>) -> Result<Arc<LasserreVector>> {
        match sigma {
            Some(s) => self.vector(s),
            None => Ok(Arc::new(LasserreVector::zero())),
        }
    }

    fn compute(&self, sigma: &PartialIso) -> Result<LasserreVector> {
        let h = h_of_sigma_with::<Rational>(&self.pair, sigma, self.collapse)?;
        let mut v = LasserreVector::zero();
        for (s, c) in h.coefficients() {
            let (Some(class), Some(gamma)) = (self.table.class_of(s), self.table.gamma(s)) else {
                return Err(Error::InvalidParameter(format!("{s:?} is outside the class table")));
            };
            v.accumulate(class, if gamma.is_minus() { -*c } else { *c });
        }
        Ok(v)
    }

    /// `Σ_U γ(U) ĥ(U)` for `h = h_{meet}`, over every `U` derivable from `∅`
    /// within the width budget; the closed form of `⟨v_σ1, v_σ2⟩` when
    /// `σ1 ∧ σ2 = meet`.
    pub fn chain_value(&self, meet: Option<&PartialIso>) -> Result<Rational> {
        let Some(m) = meet else { return Ok(Rational::from_integer(0)) };
        let h = h_of_sigma_with::<Rational>(&self.pair, m, self.collapse)?;
        let mut acc = Rational::from_integer(0);
        for (u, c) in h.coefficients() {
            match self.table.zero_sign(u) {
                Some(Sign::Plus) => acc += *c,
                Some(Sign::Minus) => acc -= *c,
                None => {}
            }
        }
        Ok(acc)
    }

    fn targets(&self, i: usize) -> Vec<usize> {
        self.pair.same_color_targets(i)
    }

    /// Harmonious color-preserving maps with `|dom| ≤ max_dom`, or `None`
    /// once there are more than `cap`.
    pub fn sigma_family(&self, max_dom: usize, cap: usize) -> Option<Vec<PartialIso>> {
        let n = self.pair.vertex_count();
        let targets: Vec<Vec<usize>> = (0..n).map(|i| self.targets(i)).collect();
        let mut out = Vec::new();
        let mut stack = vec![(0usize, PartialIso::empty())];
        while let Some((start, cur)) = stack.pop() {
            out.push(cur.clone());
            if out.len() > cap {
                return None;
            }
            if cur.len() == max_dom {
                continue;
            }
            for i in (start..n).rev() {
                for &t in targets[i].iter().rev() {
                    if let Some(next) = cur.extend(i, t) {
                        if is_harmonious(&self.pair, &next) {
                            stack.push((i + 1, next));
                        }
                    }
                }
            }
        }
        out.sort();
        Some(out)
    }

    /// A random color-preserving injective map with `dom` sources; may be
    /// non-harmonious.
    pub fn sample_sigma(&self, dom: usize, rng: &mut impl Rng) -> PartialIso {
        let n = self.pair.vertex_count();
        loop {
            let sources = sample(rng, n, dom.min(n));
            let mut sigma = Some(PartialIso::empty());
            for i in sources.iter() {
                let t = self.targets(i);
                let pick = t[rng.gen_range(0..t.len())];
                sigma = sigma.and_then(|s| s.extend(i, pick));
            }
            if let Some(s) = sigma {
                return s;
            }
        }
    }

    /// Family for the sweeps: exhaustive when small, otherwise a seeded
    /// sample of `cap` maps with domain sizes spread over `0..=max_dom`.
    fn family_or_sample(&self, max_dom: usize, cap: usize, seed: u64) -> (Vec<PartialIso>, bool) {
        if let Some(f) = self.sigma_family(max_dom, cap) {
            return (f, true);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut set = BTreeSet::from([PartialIso::empty()]);
        while set.len() < cap {
            let dom = rng.gen_range(1..=max_dom);
            set.insert(self.sample_sigma(dom, &mut rng));
        }
        (set.into_iter().collect(), false)
    }
}

/// `‖v_∅‖² = 1`.
pub fn verify_l1(inst: &LasserreInstance) -> Result<bool> {
    Ok(inst.build_vector(&PartialIso::empty())?.norm2() == Rational::from_integer(1))
}

/// The three situations in the (l2) argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum L2Case {
    /// No edges between the two color classes.
    Separate,
    /// A middle vertex and an exterior pair of the same gadget.
    Gadget,
    /// The two ends of a base edge: pairs `(u,v)_*` and `(v,u)_*`.
    Crossing,
}

pub fn classify_pair(pair: &CfiPair, i: usize, j: usize) -> L2Case {
    match (pair.xf.id(i), pair.xf.id(j)) {
        (CfiVertexId::Edge { v, u, .. }, CfiVertexId::Edge { v: v2, u: u2, .. }) if v == u2 && u == v2 => L2Case::Crossing,
        (CfiVertexId::Middle { v, .. }, CfiVertexId::Edge { v: v2, .. })
        | (CfiVertexId::Edge { v: v2, .. }, CfiVertexId::Middle { v, .. })
            if v == v2 =>
        {
            L2Case::Gadget
        }
        _ => L2Case::Separate,
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CaseSummary {
    pub pairs: usize,
    /// Distinct nonzero values of `⟨v_{i→i'}, v_{j→j'}⟩ B_{i'j'}`.
    #[serde(serialize_with = "report::scalar_list")]
    pub nonzero_values: Vec<Rational>,
    /// Distinct numbers of nonzero terms per pair.
    pub nonzero_terms: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct L2Failure {
    pub i: usize,
    pub j: usize,
    pub expected: u8,
    #[serde(serialize_with = "report::scalar")]
    pub got: Rational,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct L2Report {
    pub pairs: usize,
    pub separate: CaseSummary,
    pub gadget: CaseSummary,
    pub crossing: CaseSummary,
    pub failures: Vec<L2Failure>,
}

impl L2Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn case(&self, c: L2Case) -> &CaseSummary {
        match c {
            L2Case::Separate => &self.separate,
            L2Case::Gadget => &self.gadget,
            L2Case::Crossing => &self.crossing,
        }
    }
}

/// `Σ_{i',j'} ⟨v_{i→i'}, v_{j→j'}⟩ B_{i'j'} = A_{ij}` for every `i ≤ j`.
/// Targets of another color carry zero vectors and are skipped.
pub fn verify_l2(inst: &LasserreInstance) -> Result<L2Report> {
    if inst.level() < 1 {
        return Err(Error::LevelExceeded { dom: 1, level: inst.level() });
    }
    let pair = inst.pair();
    let n = pair.vertex_count();
    let singles: Vec<Vec<(usize, Arc<LasserreVector>)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            inst.targets(i)
                .into_iter()
                .map(|t| Ok((t, inst.vector(&PartialIso::single(i, t))?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let a = pair.xf.graph();
    let b = pair.xg.graph();
    type Row = Vec<(usize, L2Case, Rational, Vec<Rational>)>;
    let rows: Vec<Row> = (0..n)
        .into_par_iter()
        .map(|i| {
            (i..n)
                .map(|j| {
                    let mut sum = Rational::from_integer(0);
                    let mut nonzero = Vec::new();
                    for (ti, vi) in &singles[i] {
                        for (tj, vj) in &singles[j] {
                            if !b.has_edge(*ti, *tj) {
                                continue;
                            }
                            let ip = vi.dot(vj);
                            if ip != Rational::from_integer(0) {
                                nonzero.push(ip);
                            }
                            sum += ip;
                        }
                    }
                    (j, classify_pair(pair, i, j), sum, nonzero)
                })
                .collect()
        })
        .collect();
    let mut report = L2Report::default();
    let mut values: HashMap<L2Case, (BTreeSet<Rational>, BTreeSet<usize>)> = HashMap::new();
    for (i, row) in rows.into_iter().enumerate() {
        for (j, case, sum, nonzero) in row {
            report.pairs += 1;
            let expected = a.has_edge(i, j) as u8;
            if sum != Rational::from_integer(expected as i128) {
                report.failures.push(L2Failure { i, j, expected, got: sum });
            }
            let entry = values.entry(case).or_default();
            entry.1.insert(nonzero.len());
            entry.0.extend(nonzero);
            match case {
                L2Case::Separate => report.separate.pairs += 1,
                L2Case::Gadget => report.gadget.pairs += 1,
                L2Case::Crossing => report.crossing.pairs += 1,
            }
        }
    }
    for (case, (vals, counts)) in values {
        let summary = match case {
            L2Case::Separate => &mut report.separate,
            L2Case::Gadget => &mut report.gadget,
            L2Case::Crossing => &mut report.crossing,
        };
        summary.nonzero_values = vals.into_iter().collect();
        summary.nonzero_terms = counts.into_iter().collect();
    }
    Ok(report)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct L3Report {
    pub family: usize,
    pub exhaustive: bool,
    pub pairs: usize,
    pub distinct_meets: usize,
    pub bottom_pairs: usize,
    pub meet_conflicts: usize,
    pub chain_mismatches: usize,
    pub failures: Vec<String>,
}

impl L3Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Inner products depend only on the meet, and equal the chain value of
/// that meet. All pairs of the level family when there are at most
/// `budget`, else `budget` sampled pairs.
pub fn verify_l3(inst: &LasserreInstance, budget: usize, seed: u64) -> Result<L3Report> {
    if inst.level() < 1 {
        return Err(Error::LevelExceeded { dom: 1, level: inst.level() });
    }
    let (family, exhaustive) = inst.family_or_sample(inst.level(), FAMILY_CAP, seed);
    let f = family.len();
    let total = f * (f + 1) / 2;
    let pairs: Vec<(usize, usize)> = if total <= budget {
        (0..f).flat_map(|a| (a..f).map(move |b| (a, b))).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
        (0..budget).map(|_| (rng.gen_range(0..f), rng.gen_range(0..f))).collect()
    };
    let results: Vec<PairValues> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let (s1, s2) = (&family[a], &family[b]);
            let (v1, v2) = (inst.vector(s1)?, inst.vector(s2)?);
            let ip = v1.dot(&v2);
            let meet = s1.meet(s2);
            let chain = inst.chain_value(meet.as_ref())?;
            Ok((meet.map(|m| m.key()), ip, chain))
        })
        .collect::<Result<_>>()?;
    let mut report = L3Report { family: f, exhaustive: exhaustive && total <= budget, ..Default::default() };
    let mut by_meet: HashMap<Option<Vec<(usize, usize)>>, Rational> = HashMap::new();
    for ((key, ip, chain), &(a, b)) in results.into_iter().zip(&pairs) {
        report.pairs += 1;
        if key.is_none() {
            report.bottom_pairs += 1;
        }
        if ip != chain {
            report.chain_mismatches += 1;
            report.failures.push(format!("<v{}, v{}> = {} but the chain value is {}", family[a], family[b], ip, chain));
        }
        match by_meet.get(&key) {
            Some(prev) if *prev != ip => {
                report.meet_conflicts += 1;
                report.failures.push(format!("pairs with meet {:?} give both {} and {}", key, prev, ip));
            }
            Some(_) => {}
            None => {
                by_meet.insert(key, ip);
            }
        }
    }
    report.distinct_meets = by_meet.len();
    Ok(report)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct L45Report {
    pub sigmas: usize,
    pub exhaustive: bool,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl L45Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `v_σ = Σ_{i'} v_{σ∧(i→i')}` for every source `i`, and the mirrored sum
/// over sources for every target, for `|dom σ| ≤ level − 1`.
pub fn verify_l4_l5(inst: &LasserreInstance, budget: usize, seed: u64) -> Result<L45Report> {
    if inst.level() < 1 {
        return Err(Error::LevelExceeded { dom: 1, level: inst.level() });
    }
    let (family, exhaustive) = inst.family_or_sample(inst.level() - 1, budget.max(1), seed);
    let n = inst.pair().vertex_count();
    let mut report = L45Report { sigmas: family.len(), exhaustive, ..Default::default() };
    for sigma in &family {
        let target = inst.vector(sigma)?;
        let failures: Vec<String> = (0..n)
            .into_par_iter()
            .map(|k| {
                let mut out = Vec::new();
                let mut forward = LasserreVector::zero();
                let mut backward = LasserreVector::zero();
                // colors are shared, so the same list serves both directions
                for t in inst.targets(k) {
                    forward.add_assign(&*inst.meet_vector(sigma.extend(k, t).as_ref())?);
                    backward.add_assign(&*inst.meet_vector(sigma.extend(t, k).as_ref())?);
                }
                if forward != *target {
                    out.push(format!("source {k} under {sigma}: sum {:?} vs {:?}", forward.rendered(), target.rendered()));
                }
                if backward != *target {
                    out.push(format!("target {k} under {sigma}: sum {:?} vs {:?}", backward.rendered(), target.rendered()));
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        report.checks += 2 * n;
        report.failures.extend(failures);
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct LasserreReport {
    pub schema: u32,
    pub level: usize,
    pub size_budget: usize,
    pub width_budget: usize,
    pub classes: usize,
    pub l1: bool,
    pub l2: Option<L2Report>,
    pub l3: Option<L3Report>,
    pub l4_l5: Option<L45Report>,
}

impl LasserreReport {
    pub fn passed(&self) -> bool {
        self.l1
            && self.l2.as_ref().is_none_or(L2Report::passed)
            && self.l3.as_ref().is_none_or(L3Report::passed)
            && self.l4_l5.as_ref().is_none_or(L45Report::passed)
    }
}

/// Every family the level admits; at level 0 only (l1) applies.
pub fn verify_all(inst: &LasserreInstance, budget: usize, seed: u64) -> Result<LasserreReport> {
    let leveled = inst.level() >= 1;
    Ok(LasserreReport {
        schema: report::REPORT_SCHEMA,
        level: inst.level(),
        size_budget: inst.table().size_budget(),
        width_budget: inst.table().width_budget(),
        classes: inst.table().class_count(),
        l1: verify_l1(inst)?,
        l2: if leveled { Some(verify_l2(inst)?) } else { None },
        l3: if leveled { Some(verify_l3(inst, budget, seed)?) } else { None },
        l4_l5: if leveled { Some(verify_l4_l5(inst, budget, seed)?) } else { None },
    })
}
