use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::dsu::ParityDsu;
use super::edgeset::EdgeSet;
use super::width::{reachable, refutation_width, ProjectedSystem, RefutationWidth, Sign, DEFAULT_STATE_BUDGET};
use crate::error::{Error, Result};
use crate::xor::XorSystem;

pub const SNAPSHOT_SCHEMA: u32 = 1;

/// One equivalence class of small edge sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeClass {
    pub exemplar: EdgeSet,
    /// Members of size at most the size budget, ascending.
    pub members: Vec<EdgeSet>,
}

/// Edge sets of size at most `s`, grouped by derivability within width `w`,
/// with the sign `γ` of each set relative to its class exemplar.
#[derive(Clone, Debug)]
pub struct ClassTable {
    system: ProjectedSystem,
    size_budget: usize,
    width_budget: usize,
    classes: Vec<EdgeClass>,
    index: HashMap<EdgeSet, (usize, Sign)>,
    /// Every set within the width budget derivable from `∅`, with its sign.
    zero_component: HashMap<EdgeSet, Sign>,
}

/// Classes for level parameter `r`: size budget `⌊r/3⌋`, width budget
/// `⌊2r/3⌋`. Fails when a width-`r` refutation exists.
pub fn build_class_table(sys: &XorSystem, r: usize) -> Result<ClassTable> {
    let proj = ProjectedSystem::from_xor(sys)?;
    if let RefutationWidth::Exact(w) = refutation_width(&proj, r)? {
        return Err(Error::IllDefinedGamma { width: w });
    }
    ClassTable::with_budgets(&proj, r / 3, 2 * r / 3)
}

impl ClassTable {
    pub fn with_budgets(sys: &ProjectedSystem, size_budget: usize, width_budget: usize) -> Result<Self> {
        Self::with_state_budget(sys, size_budget, width_budget, DEFAULT_STATE_BUDGET)
    }

    pub fn with_state_budget(
        sys: &ProjectedSystem,
        size_budget: usize,
        width_budget: usize,
        max_states: usize,
    ) -> Result<Self> {
        if size_budget > width_budget {
            return Err(Error::InvalidParameter(format!(
                "size budget {size_budget} exceeds width budget {width_budget}"
            )));
        }
        let small = EdgeSet::all_up_to(sys.edge_count(), size_budget);
        let mut ids: HashMap<EdgeSet, u32> = HashMap::new();
        let mut sets: Vec<EdgeSet> = Vec::new();
        let mut dsu = ParityDsu::new();
        for &root in &small {
            if ids.contains_key(&root) {
                continue;
            }
            ids.insert(root, dsu.push() as u32);
            sets.push(root);
            let mut frontier = vec![sets.len() - 1];
            while let Some(a) = frontier.pop() {
                let cur = sets[a];
                for g in sys.generators() {
                    let next = cur.sym_diff(g.support);
                    if next.len() > width_budget {
                        continue;
                    }
                    let b = match ids.get(&next) {
                        Some(&b) => b as usize,
                        None => {
                            let b = dsu.push();
                            ids.insert(next, b as u32);
                            sets.push(next);
                            frontier.push(b);
                            if sets.len() > max_states {
                                return Err(Error::BudgetExceeded(format!("more than {max_states} class states")));
                            }
                            b
                        }
                    };
                    if dsu.union(a, b, g.odd).is_err() {
                        return Err(Error::SignContradiction(format!(
                            "{cur:?} derives {next:?} with both signs within width {width_budget}"
                        )));
                    }
                }
            }
        }

        let mut by_root: HashMap<usize, (usize, bool)> = HashMap::new();
        let mut classes: Vec<EdgeClass> = Vec::new();
        let mut index = HashMap::with_capacity(small.len());
        for &s in &small {
            let (root, parity) = dsu.find(ids[&s] as usize);
            let (class, base) = *by_root.entry(root).or_insert_with(|| {
                classes.push(EdgeClass { exemplar: s, members: Vec::new() });
                (classes.len() - 1, parity)
            });
            classes[class].members.push(s);
            index.insert(s, (class, Sign::from_odd(parity ^ base)));
        }
        let (zero_root, zero_parity) = dsu.find(ids[&EdgeSet::EMPTY] as usize);
        let mut zero_component = HashMap::new();
        for (k, &set) in sets.iter().enumerate() {
            let (root, parity) = dsu.find(k);
            if root == zero_root {
                zero_component.insert(set, Sign::from_odd(parity ^ zero_parity));
            }
        }
        Ok(Self { system: sys.clone(), size_budget, width_budget, classes, index, zero_component })
    }

    pub fn system(&self) -> &ProjectedSystem {
        &self.system
    }

    pub fn size_budget(&self) -> usize {
        self.size_budget
    }

    pub fn width_budget(&self) -> usize {
        self.width_budget
    }

    pub fn classes(&self) -> &[EdgeClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Class index of `s`, if `|s|` is within the size budget.
    pub fn class_of(&self, s: EdgeSet) -> Option<usize> {
        self.index.get(&s).map(|x| x.0)
    }

    pub fn gamma(&self, s: EdgeSet) -> Option<Sign> {
        self.index.get(&s).map(|x| x.1)
    }

    pub fn exemplar(&self, class: usize) -> EdgeSet {
        self.classes[class].exemplar
    }

    /// Class and sign of the edge under the directed variable `x(p, q)`.
    pub fn gamma_directed(&self, p: usize, q: usize) -> Option<(usize, Sign)> {
        let e = self.system.edge_index(p, q)?;
        let s = EdgeSet::singleton(e);
        let (class, sign) = *self.index.get(&s)?;
        Some((class, sign * self.system.orientation_sign(p, q)?))
    }

    /// Sign of `u` relative to `∅` when `u` is derivable from `∅` within the
    /// width budget; `u` may be larger than the size budget.
    pub fn zero_sign(&self, u: EdgeSet) -> Option<Sign> {
        self.zero_component.get(&u).copied()
    }

    /// Sets derivable from `∅` within the width budget, ascending.
    pub fn zero_component(&self) -> Vec<(EdgeSet, Sign)> {
        let mut v: Vec<(EdgeSet, Sign)> = self.zero_component.iter().map(|(&k, &s)| (k, s)).collect();
        v.sort();
        v
    }

    /// Members of the class of `∅`.
    pub fn empty_class(&self) -> &[EdgeSet] {
        &self.classes[self.class_of(EdgeSet::EMPTY).expect("empty set is always indexed")].members
    }

    /// Negates `γ(s)`; the checks in [`classes_sanity`] should notice.
    pub fn flip_gamma(&mut self, s: EdgeSet) {
        if let Some(entry) = self.index.get_mut(&s) {
            entry.1 = entry.1 * Sign::Minus;
        }
    }

    pub fn to_snapshot(&self) -> Snapshot {
        Snapshot {
            schema: SNAPSHOT_SCHEMA,
            vertex_count: self.system.vertex_count(),
            edges: self.system.edges().to_vec(),
            twist: self.system.twist(),
            size_budget: self.size_budget,
            width_budget: self.width_budget,
            classes: self
                .classes
                .iter()
                .map(|c| SnapshotClass {
                    exemplar: c.exemplar,
                    members: c.members.iter().map(|&s| (s, self.index[&s].1.value())).collect(),
                })
                .collect(),
            zero_component: self.zero_component().into_iter().map(|(u, s)| (u, s.value())).collect(),
        }
    }

    pub fn from_snapshot(snap: &Snapshot) -> Result<Self> {
        if snap.schema != SNAPSHOT_SCHEMA {
            return Err(Error::Snapshot(format!("unsupported schema {}", snap.schema)));
        }
        let system = ProjectedSystem::from_edges(snap.vertex_count, &snap.edges, snap.twist)?;
        let parse_sign = |sign: i8| match sign {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(Error::Snapshot(format!("bad sign {other}"))),
        };
        let mut index = HashMap::new();
        let mut classes = Vec::with_capacity(snap.classes.len());
        for (i, c) in snap.classes.iter().enumerate() {
            let mut members = Vec::with_capacity(c.members.len());
            for &(s, sign) in &c.members {
                let sign = parse_sign(sign)?;
                if index.insert(s, (i, sign)).is_some() {
                    return Err(Error::Snapshot(format!("{s:?} listed twice")));
                }
                members.push(s);
            }
            classes.push(EdgeClass { exemplar: c.exemplar, members });
        }
        let zero_component = snap
            .zero_component
            .iter()
            .map(|&(u, sign)| Ok((u, parse_sign(sign)?)))
            .collect::<Result<HashMap<_, _>>>()?;
        Ok(Self {
            system,
            size_budget: snap.size_budget,
            width_budget: snap.width_budget,
            classes,
            index,
            zero_component,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_snapshot()).expect("snapshot serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let snap: Snapshot = serde_json::from_str(text).map_err(|e| Error::Snapshot(e.to_string()))?;
        Self::from_snapshot(&snap)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnapshotClass {
    pub exemplar: EdgeSet,
    pub members: Vec<(EdgeSet, i8)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Snapshot {
    pub schema: u32,
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
    pub twist: EdgeSet,
    pub size_budget: usize,
    pub width_budget: usize,
    pub classes: Vec<SnapshotClass>,
    pub zero_component: Vec<(EdgeSet, i8)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SanityReport {
    pub sources: usize,
    pub pairs: usize,
    pub products: usize,
    pub violations: Vec<String>,
}

impl SanityReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Re-derives classes and signs from up to `samples` sources by direct
/// search and compares them with the table; also checks
/// `γ(S)·γ(S Δ U) = γ(U)` for `U` in the class of `∅`.
pub fn classes_sanity(table: &ClassTable, samples: usize, seed: u64) -> Result<SanityReport> {
    let sys = table.system();
    let w = table.width_budget();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<EdgeSet> = table.classes().iter().flat_map(|c| c.members.iter().copied()).collect();
    let mut sources = all.clone();
    sources.sort();
    if sources.len() > samples {
        sources.shuffle(&mut rng);
        sources.truncate(samples);
        sources.sort();
    }
    let mut report = SanityReport::default();
    for &s in &sources {
        report.sources += 1;
        let reach = reachable(sys, s, w, DEFAULT_STATE_BUDGET)?;
        if !reach.get(&s).is_some_and(|d| d.plus) {
            report.violations.push(format!("{s:?} does not derive itself"));
        }
        let gs = table.gamma(s).expect("sources come from the table");
        for &t in &all {
            report.pairs += 1;
            let d = reach.get(&t).copied().unwrap_or_default();
            let same = table.class_of(s) == table.class_of(t);
            if d.any() != same {
                report.violations.push(format!("{s:?} and {t:?}: derivable {} but same class {same}", d.any()));
                continue;
            }
            if !same {
                continue;
            }
            match d.only() {
                None => report.violations.push(format!("{s:?} derives {t:?} with both signs")),
                Some(sign) if sign != gs * table.gamma(t).unwrap() => {
                    report.violations.push(format!("{s:?} -> {t:?} has sign {sign}, table says otherwise"))
                }
                Some(_) => {}
            }
        }
    }
    let empty_class = table.empty_class().to_vec();
    for &s in &sources {
        for &u in &empty_class {
            let su = s.sym_diff(u);
            let Some(gsu) = table.gamma(su) else { continue };
            report.products += 1;
            let lhs = table.gamma(s).unwrap() * gsu;
            if lhs != table.gamma(u).unwrap() {
                report.violations.push(format!("γ({s:?})γ({su:?}) != γ({u:?})"));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cfi::TwistFunction;
    use crate::graph::named;
    use crate::xor::build_phi;

    fn k4(odd: bool) -> XorSystem {
        let g = if odd { TwistFunction::odd(6) } else { TwistFunction::zero(6) };
        build_phi(&named::complete(4), &TwistFunction::zero(6), &g).unwrap()
    }

    #[test]
    fn empty_set_is_its_own_exemplar() {
        let t = build_class_table(&k4(true), 3).unwrap();
        assert_eq!(t.exemplar(t.class_of(EdgeSet::EMPTY).unwrap()), EdgeSet::EMPTY);
        assert_eq!(t.gamma(EdgeSet::EMPTY), Some(Sign::Plus));
        for c in t.classes() {
            assert_eq!(t.gamma(c.exemplar), Some(Sign::Plus));
            assert_eq!(c.exemplar, c.members[0]);
        }
    }

    #[test]
    fn refutable_system_rejected() {
        assert_eq!(build_class_table(&k4(true), 4).unwrap_err(), Error::IllDefinedGamma { width: 4 });
    }

    #[test]
    fn k4_odd_sanity() {
        let t = build_class_table(&k4(true), 3).unwrap();
        // size 1, width 2: a single edge steps to the other two at an endpoint
        assert_eq!(t.size_budget(), 1);
        assert_eq!(t.width_budget(), 2);
        let r = classes_sanity(&t, usize::MAX, 0).unwrap();
        assert!(r.is_clean(), "{:?}", r.violations);
    }

    #[test]
    fn corrupted_sign_detected() {
        let proj = ProjectedSystem::from_xor(&k4(false)).unwrap();
        let mut t = ClassTable::with_budgets(&proj, 2, 2).unwrap();
        assert!(classes_sanity(&t, usize::MAX, 0).unwrap().is_clean());
        t.flip_gamma(EdgeSet::from_indices(&[1, 2]));
        assert!(!classes_sanity(&t, usize::MAX, 0).unwrap().is_clean());
    }

    #[test]
    fn snapshot_round_trip() {
        let t = build_class_table(&k4(true), 3).unwrap();
        let back = ClassTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back.classes(), t.classes());
        for c in t.classes() {
            for &s in &c.members {
                assert_eq!(back.gamma(s), t.gamma(s));
            }
        }
        assert!(ClassTable::from_json("{\"schema\":9}").is_err());
    }
}
