//! Tits coset geometries and the hypertope axioms.
//!
//! Elements of type `i` are right cosets `G_i x`. Two cosets of different
//! types are incident when they intersect:
//!
//! ```text
//! G_i x ∩ G_j y ≠ ∅  ⇔  x y⁻¹ ∈ G_i G_j
//! ```
//!
//! so the type-`j` cosets incident to `G_i r` are `G_j q r` for `q` ranging
//! over `G_j G_i`.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cgroup::{
    check_intersection_property, flag_transitivity_rank3, tits_condition, type_orders, CGroupError,
    GeneratedGroup,
};
use crate::group::{subgroup_intersection, ElemId, Subgroup, IDENTITY};
use crate::report::{timed, Stage, StageLog};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("geometry needs {expected} subgroups, got {got}")]
    SubgroupCount { expected: usize, got: usize },
    #[error("subgroup {0} belongs to a different group")]
    ForeignSubgroup(usize),
    #[error(transparent)]
    CGroup(#[from] CGroupError),
}

/// A set of pairwise incident elements, one per listed type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Flag {
    /// `(type, element index)` sorted by type.
    pub chosen: Vec<(usize, u32)>,
}

impl Flag {
    pub fn types(&self) -> Vec<usize> {
        self.chosen.iter().map(|&(t, _)| t).collect()
    }

    pub fn is_chamber(&self, rank: usize) -> bool {
        self.chosen.len() == rank
    }
}

/// A typed incidence system stored as adjacency lists, independent of any
/// group. `adjacency[i][j][x]` lists the type-`j` elements incident to the
/// type-`i` element `x`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceStructure {
    type_sizes: Vec<usize>,
    adjacency: Vec<Vec<Vec<Vec<u32>>>>,
}

fn sorted_intersection(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

impl IncidenceStructure {
    /// Builds from a symmetric incidence list per ordered type pair. Lists
    /// for `i == j` are ignored.
    pub fn new(type_sizes: Vec<usize>, mut adjacency: Vec<Vec<Vec<Vec<u32>>>>) -> Self {
        for row in &mut adjacency {
            for lists in row {
                for l in lists {
                    l.sort_unstable();
                    l.dedup();
                }
            }
        }
        IncidenceStructure {
            type_sizes,
            adjacency,
        }
    }

    pub fn rank(&self) -> usize {
        self.type_sizes.len()
    }

    pub fn type_sizes(&self) -> &[usize] {
        &self.type_sizes
    }

    pub fn neighbours(&self, i: usize, x: u32, j: usize) -> &[u32] {
        &self.adjacency[i][j][x as usize]
    }

    pub fn incident(&self, i: usize, x: u32, j: usize, y: u32) -> bool {
        if i == j {
            return x == y;
        }
        self.neighbours(i, x, j).binary_search(&y).is_ok()
    }

    /// Every chamber, lexicographic in element indices. Rank 3 only.
    pub fn chambers(&self) -> Vec<Flag> {
        assert_eq!(self.rank(), 3, "chamber enumeration is rank 3");
        let mut out = Vec::new();
        for a in 0..self.type_sizes[0] as u32 {
            let twos = self.neighbours(0, a, 2);
            for &b in self.neighbours(0, a, 1) {
                for c in sorted_intersection(twos, self.neighbours(1, b, 2)) {
                    out.push(Flag {
                        chosen: vec![(0, a), (1, b), (2, c)],
                    });
                }
            }
        }
        out
    }

    pub fn count_chambers(&self) -> usize {
        self.chambers().len()
    }

    /// Every flag whose type set is exactly `types` (sorted, nonempty).
    pub fn flags_of_type(&self, types: &[usize]) -> Vec<Flag> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        self.extend_flags(types, &mut current, &mut out);
        out
    }

    fn extend_flags(&self, types: &[usize], current: &mut Vec<(usize, u32)>, out: &mut Vec<Flag>) {
        let Some((&t, rest)) = types.split_first() else {
            out.push(Flag {
                chosen: current.clone(),
            });
            return;
        };
        let candidates: Vec<u32> = match current.first() {
            None => (0..self.type_sizes[t] as u32).collect(),
            Some(&(u, x)) => self
                .neighbours(u, x, t)
                .iter()
                .copied()
                .filter(|&y| current.iter().all(|&(v, z)| self.incident(v, z, t, y)))
                .collect(),
        };
        for y in candidates {
            current.push((t, y));
            self.extend_flags(rest, current, out);
            current.pop();
        }
    }

    /// A flag of cotype `{i}` whose residue does not have exactly two
    /// elements, with the residue size.
    pub fn thinness_witness(&self) -> Option<(Flag, usize)> {
        assert_eq!(self.rank(), 3, "thinness check is rank 3");
        for i in 0..3 {
            let (j, k) = match i {
                0 => (1, 2),
                1 => (0, 2),
                _ => (0, 1),
            };
            for a in 0..self.type_sizes[j] as u32 {
                for &b in self.neighbours(j, a, k) {
                    let residue =
                        sorted_intersection(self.neighbours(j, a, i), self.neighbours(k, b, i));
                    if residue.len() != 2 {
                        return Some((
                            Flag {
                                chosen: vec![(j, a), (k, b)],
                            },
                            residue.len(),
                        ));
                    }
                }
            }
        }
        None
    }

    pub fn is_thin(&self) -> bool {
        self.thinness_witness().is_none()
    }

    fn connected(&self, vertices: &[(usize, u32)]) -> bool {
        if vertices.len() <= 1 {
            return true;
        }
        let index: HashMap<(usize, u32), usize> =
            vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let types: Vec<usize> = {
            let mut t: Vec<usize> = vertices.iter().map(|&(t, _)| t).collect();
            t.sort_unstable();
            t.dedup();
            t
        };
        let mut seen = vec![false; vertices.len()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        let mut reached = 1;
        while let Some(k) = queue.pop_front() {
            let (i, x) = vertices[k];
            for &j in types.iter().filter(|&&j| j != i) {
                for &y in self.neighbours(i, x, j) {
                    if let Some(&m) = index.get(&(j, y)) {
                        if !seen[m] {
                            seen[m] = true;
                            reached += 1;
                            queue.push_back(m);
                        }
                    }
                }
            }
        }
        reached == vertices.len()
    }

    /// `None` if the incidence graph and every rank-2 residue are connected,
    /// otherwise the offending flag (empty for the whole geometry).
    pub fn residual_connectedness_witness(&self) -> Option<Flag> {
        assert_eq!(self.rank(), 3, "residual connectedness check is rank 3");
        let all: Vec<(usize, u32)> = (0..3)
            .flat_map(|i| (0..self.type_sizes[i] as u32).map(move |x| (i, x)))
            .collect();
        if !self.connected(&all) {
            return Some(Flag { chosen: vec![] });
        }
        for i in 0..3 {
            for x in 0..self.type_sizes[i] as u32 {
                let residue: Vec<(usize, u32)> = (0..3)
                    .filter(|&j| j != i)
                    .flat_map(|j| self.neighbours(i, x, j).iter().map(move |&y| (j, y)))
                    .collect();
                if !self.connected(&residue) {
                    return Some(Flag {
                        chosen: vec![(i, x)],
                    });
                }
            }
        }
        None
    }

    pub fn is_residually_connected(&self) -> bool {
        self.residual_connectedness_witness().is_none()
    }

    /// Two copies side by side, nothing incident across them.
    pub fn disjoint_union(&self, other: &IncidenceStructure) -> IncidenceStructure {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        let r = self.rank();
        let sizes: Vec<usize> = (0..r)
            .map(|i| self.type_sizes[i] + other.type_sizes[i])
            .collect();
        let adjacency = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        if i == j {
                            return vec![Vec::new(); sizes[i]];
                        }
                        let shift = self.type_sizes[j] as u32;
                        let mut lists = self.adjacency[i][j].clone();
                        lists.extend(
                            other.adjacency[i][j]
                                .iter()
                                .map(|l| l.iter().map(|&y| y + shift).collect()),
                        );
                        lists
                    })
                    .collect()
            })
            .collect();
        IncidenceStructure::new(sizes, adjacency)
    }

    /// Incidence graph as an edge list, one `i:x j:y` line per incident
    /// pair with `i < j`.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rank() {
            for j in i + 1..self.rank() {
                for x in 0..self.type_sizes[i] as u32 {
                    for &y in self.neighbours(i, x, j) {
                        let _ = writeln!(out, "{i}:{x} {j}:{y}");
                    }
                }
            }
        }
        out
    }
}

/// The coset geometry `Γ(G; (G_i))` for a group with distinguished
/// subgroups, together with its incidence structure.
pub struct CosetGeometry<'g> {
    group: &'g GeneratedGroup,
    subgroups: Vec<Subgroup<'g>>,
    /// `coset_of[i][x]`: index of the coset `G_i x`.
    coset_of: Vec<Vec<u32>>,
    /// `reps[i][c]`: first element of coset `c` in element order.
    reps: Vec<Vec<ElemId>>,
    /// `products[i][j][x]`: `x ∈ G_i G_j`.
    products: Vec<Vec<Vec<bool>>>,
    incidence: IncidenceStructure,
}

impl std::fmt::Debug for CosetGeometry<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CosetGeometry")
            .field("type_sizes", &self.incidence.type_sizes)
            .finish()
    }
}

/// `Γ(G; G_0, G_1, G_2)` with `G_i = ⟨ρ_j : j ≠ i⟩`.
pub fn build_geometry(g: &GeneratedGroup) -> Result<CosetGeometry<'_>, GeometryError> {
    if g.rank() != 3 {
        return Err(CGroupError::Rank {
            expected: "3",
            got: g.rank(),
        }
        .into());
    }
    let subs = (0..3).map(|i| g.maximal_parabolic(i)).collect();
    CosetGeometry::from_subgroups(g, subs)
}

impl<'g> CosetGeometry<'g> {
    /// Coset geometry on arbitrary subgroups of `g`'s group, one per type.
    pub fn from_subgroups(
        g: &'g GeneratedGroup,
        subgroups: Vec<Subgroup<'g>>,
    ) -> Result<Self, GeometryError> {
        if subgroups.len() != 3 {
            return Err(GeometryError::SubgroupCount {
                expected: 3,
                got: subgroups.len(),
            });
        }
        let grp = g.group();
        for (i, s) in subgroups.iter().enumerate() {
            if !std::ptr::eq(s.parent(), grp) {
                return Err(GeometryError::ForeignSubgroup(i));
            }
        }
        let order = grp.order();
        let r = subgroups.len();

        let mut coset_of = Vec::with_capacity(r);
        let mut reps = Vec::with_capacity(r);
        for s in &subgroups {
            let mut labels = vec![u32::MAX; order];
            let mut rs = Vec::new();
            for x in grp.elements() {
                if labels[x as usize] != u32::MAX {
                    continue;
                }
                let c = rs.len() as u32;
                rs.push(x);
                for &h in s.members() {
                    labels[grp.mul(h, x) as usize] = c;
                }
            }
            coset_of.push(labels);
            reps.push(rs);
        }

        let mut products = vec![vec![Vec::new(); r]; r];
        for i in 0..r {
            for j in 0..r {
                let mut mask = vec![false; order];
                for &a in subgroups[i].members() {
                    for &b in subgroups[j].members() {
                        mask[grp.mul(a, b) as usize] = true;
                    }
                }
                products[i][j] = mask;
            }
        }

        let type_sizes: Vec<usize> = reps.iter().map(Vec::len).collect();
        let mut adjacency = vec![vec![Vec::new(); r]; r];
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    adjacency[i][j] = vec![Vec::new(); type_sizes[i]];
                    continue;
                }
                // one q per right coset of G_j inside G_j G_i
                let mut seen = vec![false; type_sizes[j]];
                let mut transversal = Vec::new();
                for q in grp.elements().filter(|&q| products[j][i][q as usize]) {
                    let c = coset_of[j][q as usize] as usize;
                    if !seen[c] {
                        seen[c] = true;
                        transversal.push(q);
                    }
                }
                adjacency[i][j] = reps[i]
                    .iter()
                    .map(|&rep| {
                        transversal
                            .iter()
                            .map(|&q| coset_of[j][grp.mul(q, rep) as usize])
                            .collect()
                    })
                    .collect();
            }
        }

        Ok(CosetGeometry {
            group: g,
            subgroups,
            coset_of,
            reps,
            products,
            incidence: IncidenceStructure::new(type_sizes, adjacency),
        })
    }

    pub fn group(&self) -> &'g GeneratedGroup {
        self.group
    }

    pub fn subgroups(&self) -> &[Subgroup<'g>] {
        &self.subgroups
    }

    pub fn incidence(&self) -> &IncidenceStructure {
        &self.incidence
    }

    pub fn type_sizes(&self) -> &[usize] {
        self.incidence.type_sizes()
    }

    pub fn coset_of(&self, i: usize, x: ElemId) -> u32 {
        self.coset_of[i][x as usize]
    }

    pub fn representative(&self, i: usize, c: u32) -> ElemId {
        self.reps[i][c as usize]
    }

    /// Incidence by product-set membership.
    pub fn incident(&self, i: usize, a: u32, j: usize, b: u32) -> bool {
        if i == j {
            return a == b;
        }
        let grp = self.group.group();
        let x = self.reps[i][a as usize];
        let y = self.reps[j][b as usize];
        self.products[i][j][grp.mul(x, grp.inverse(y)) as usize]
    }

    /// Incidence by explicit coset intersection; the slow oracle.
    pub fn incident_by_intersection(&self, i: usize, a: u32, j: usize, b: u32) -> bool {
        if i == j {
            return a == b;
        }
        let grp = self.group.group();
        let x = self.reps[i][a as usize];
        self.subgroups[i]
            .members()
            .iter()
            .any(|&h| self.coset_of[j][grp.mul(h, x) as usize] == b)
    }

    /// Number of cross-type pairs where the adjacency lists, the product
    /// test and the intersection test do not all agree.
    pub fn incidence_discrepancies(&self) -> usize {
        let sizes = self.type_sizes();
        let mut bad = 0;
        for i in 0..3 {
            for j in 0..3 {
                if i == j {
                    continue;
                }
                for a in 0..sizes[i] as u32 {
                    for b in 0..sizes[j] as u32 {
                        let p = self.incident(i, a, j, b);
                        let q = self.incident_by_intersection(i, a, j, b);
                        let l = self.incidence.incident(i, a, j, b);
                        if p != q || p != l {
                            bad += 1;
                        }
                    }
                }
            }
        }
        bad
    }

    fn act(&self, i: usize, c: u32, x: ElemId) -> u32 {
        let grp = self.group.group();
        self.coset_of[i][grp.mul(self.reps[i][c as usize], x) as usize]
    }

    /// The chamber `(G_0, G_1, G_2)`.
    pub fn base_chamber(&self) -> Flag {
        Flag {
            chosen: (0..3)
                .map(|i| (i, self.coset_of[i][IDENTITY as usize]))
                .collect(),
        }
    }

    /// Orbit size of the base chamber under right multiplication and its
    /// stabilizer `G_0 ∩ G_1 ∩ G_2`.
    pub fn regular_action(&self) -> RegularAction {
        let grp = self.group.group();
        let mut orbit: Vec<[u32; 3]> = grp
            .elements()
            .map(|x| {
                [
                    self.coset_of[0][x as usize],
                    self.coset_of[1][x as usize],
                    self.coset_of[2][x as usize],
                ]
            })
            .collect();
        let stabilizer: Vec<ElemId> = grp
            .elements()
            .filter(|&x| orbit[x as usize] == [0, 0, 0])
            .collect();
        orbit.sort_unstable();
        orbit.dedup();
        let chambers = self.incidence.count_chambers();
        let witness = stabilizer
            .iter()
            .copied()
            .find(|&x| x != IDENTITY)
            .map(|x| self.group.render(x));
        RegularAction {
            orbit_size: orbit.len(),
            chambers,
            stabilizer_order: stabilizer.len(),
            stabilizer_witness: witness,
        }
    }

    /// Counts orbits of the group on flags of each nonempty type set.
    pub fn flag_orbits(&self) -> Vec<FlagOrbits> {
        let mut out = Vec::new();
        for mask in 1..8usize {
            let types: Vec<usize> = (0..3).filter(|i| mask & (1 << i) != 0).collect();
            let flags = self.incidence.flags_of_type(&types);
            let index: HashMap<&Flag, usize> =
                flags.iter().enumerate().map(|(k, f)| (f, k)).collect();
            let mut seen = vec![false; flags.len()];
            let mut orbits = 0;
            for start in 0..flags.len() {
                if seen[start] {
                    continue;
                }
                orbits += 1;
                seen[start] = true;
                let mut queue = VecDeque::from([start]);
                while let Some(k) = queue.pop_front() {
                    for &r in self.group.involutions() {
                        let image = Flag {
                            chosen: flags[k]
                                .chosen
                                .iter()
                                .map(|&(t, c)| (t, self.act(t, c, r)))
                                .collect(),
                        };
                        let m = index[&image];
                        if !seen[m] {
                            seen[m] = true;
                            queue.push_back(m);
                        }
                    }
                }
            }
            out.push(FlagOrbits {
                types,
                flags: flags.len(),
                orbits,
            });
        }
        out
    }

    pub fn edge_list(&self) -> String {
        self.incidence.edge_list()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularAction {
    pub orbit_size: usize,
    pub chambers: usize,
    pub stabilizer_order: usize,
    pub stabilizer_witness: Option<String>,
}

impl RegularAction {
    /// Transitive on chambers with trivial chamber stabilizer.
    pub fn is_regular(&self) -> bool {
        self.orbit_size == self.chambers && self.stabilizer_order == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagOrbits {
    pub types: Vec<usize>,
    pub flags: usize,
    pub orbits: usize,
}

pub fn is_chamber_transitive(orbits: &[FlagOrbits]) -> bool {
    orbits
        .iter()
        .filter(|o| o.types.len() == 3)
        .all(|o| o.orbits == 1)
}

pub fn is_flag_transitive(orbits: &[FlagOrbits]) -> bool {
    orbits.iter().all(|o| o.orbits == 1)
}

pub fn check_regular_action(geom: &CosetGeometry<'_>) -> bool {
    geom.regular_action().is_regular()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypertopeVerdict {
    pub stages: Vec<Stage>,
    pub is_regular_hypertope: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub type_orders: Option<[u64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub type_sizes: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chambers: Option<usize>,
    pub verdict: String,
}

impl HypertopeVerdict {
    pub fn first_failure(&self) -> Option<&Stage> {
        self.stages.iter().find(|s| !s.pass)
    }
}

fn render_flag(f: &Flag) -> String {
    let parts: Vec<String> = f.chosen.iter().map(|(t, c)| format!("{t}:{c}")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// The hypertope axioms in order, stopping at the first failure.
pub fn hypertope_verdict(g: &GeneratedGroup) -> Result<HypertopeVerdict, GeometryError> {
    let orders = type_orders(g)?;
    let mut log = StageLog::default();
    let mut out = HypertopeVerdict {
        stages: Vec::new(),
        is_regular_hypertope: false,
        type_orders: Some(orders),
        type_sizes: None,
        chambers: None,
        verdict: String::new(),
    };
    let finish = |mut out: HypertopeVerdict, log: StageLog| {
        out.verdict = match log.first_failure() {
            Some(s) => format!("not a regular hypertope: {} failed", s.name),
            None => {
                out.is_regular_hypertope = true;
                let [a, b, c] = orders;
                format!(
                    "regular hypertope of type ({a},{b},{c}) with {} chambers",
                    out.chambers.unwrap_or(0)
                )
            }
        };
        out.stages = log.stages;
        out
    };

    let (rep, ms) = timed(|| check_intersection_property(g));
    let rep = rep?;
    let stage = match rep.failures.first() {
        None => Stage::passed("intersection_property"),
        Some(f) => Stage::failed(
            "intersection_property",
            format!("{} in G_{:?} ∩ G_{:?}", f.witness_word, f.left, f.right),
        ),
    };
    if !log.push(stage, ms) {
        return Ok(finish(out, log));
    }

    let (ft, ms) = timed(|| flag_transitivity_rank3(g));
    let stage = if ft? {
        Stage::passed("flag_transitivity")
    } else {
        let t = tits_condition(g)?;
        let extra: Vec<ElemId> = t.rhs.difference(&t.lhs).copied().collect();
        let w = g
            .shortest_in(&extra)
            .map(|x| g.render(x))
            .unwrap_or_default();
        Stage::failed(
            "flag_transitivity",
            format!("{w} in (G1 G2 ∩ G0) \\ (G0∩G1)(G0∩G2)"),
        )
    };
    if !log.push(stage, ms) {
        return Ok(finish(out, log));
    }

    let (geom, ms) = timed(|| build_geometry(g));
    let geom = geom?;
    out.type_sizes = Some(geom.type_sizes().to_vec());
    log.push(Stage::passed("geometry"), ms);

    let (thin, ms) = timed(|| geom.incidence().thinness_witness());
    let stage = match thin {
        None => Stage::passed("thin"),
        Some((flag, size)) => Stage::failed(
            "thin",
            format!("residue of {} has {size} elements", render_flag(&flag)),
        ),
    };
    if !log.push(stage, ms) {
        return Ok(finish(out, log));
    }

    let (rc, ms) = timed(|| geom.incidence().residual_connectedness_witness());
    let stage = match rc {
        None => Stage::passed("residually_connected"),
        Some(flag) => Stage::failed(
            "residually_connected",
            format!("residue of {} is disconnected", render_flag(&flag)),
        ),
    };
    if !log.push(stage, ms) {
        return Ok(finish(out, log));
    }

    let (action, ms) = timed(|| geom.regular_action());
    out.chambers = Some(action.chambers);
    let stage = if action.chambers == g.order() {
        Stage::passed("chambers")
    } else {
        Stage::failed(
            "chambers",
            format!("{} chambers, |G| = {}", action.chambers, g.order()),
        )
    };
    if !log.push(stage, ms) {
        return Ok(finish(out, log));
    }

    let stage = if action.is_regular() {
        Stage::passed("regular_action")
    } else {
        Stage::failed(
            "regular_action",
            match &action.stabilizer_witness {
                Some(w) => format!("{w} fixes the base chamber"),
                None => format!(
                    "orbit of size {} on {} chambers",
                    action.orbit_size, action.chambers
                ),
            },
        )
    };
    log.push(stage, 0.0);
    Ok(finish(out, log))
}

/// `G_0 ∩ G_1 ∩ G_2` for the distinguished maximal parabolics.
pub fn base_stabilizer(g: &GeneratedGroup) -> Result<usize, GeometryError> {
    let g0 = g.maximal_parabolic(0);
    let g1 = g.maximal_parabolic(1);
    let g2 = g.maximal_parabolic(2);
    let m = subgroup_intersection(
        &subgroup_intersection(&g0, &g1).map_err(CGroupError::from)?,
        &g2,
    )
    .map_err(CGroupError::from)?;
    Ok(m.order())
}
