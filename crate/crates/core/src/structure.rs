//! Green's relations, idempotents, regularity and aperiodicity of a finite
//! monoid given by its multiplication table, plus the egg-box picture of
//! the Jones monoids.
//!
//! R-classes are the strongly connected components of the right Cayley
//! graph over the table's generating set (reachability equals right-ideal
//! containment because the generators generate); L-classes use left
//! multiplication, J-classes the union graph, and H is the pairwise
//! intersection of R and L.

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Diagram, MonoidTable};
use crate::table::MulTable;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("expected a diagram on 5 strands, got {0}")]
    NotFiveStrands(usize),
}

/// The four Green's relations as element-to-class maps plus per-class
/// member lists. Class ids are assigned by smallest member, so the
/// numbering is deterministic.
#[derive(Clone, Debug)]
pub struct GreenStructure {
    pub r_class_of: Vec<usize>,
    pub l_class_of: Vec<usize>,
    pub j_class_of: Vec<usize>,
    pub h_class_of: Vec<usize>,
    pub r_classes: Vec<Vec<usize>>,
    pub l_classes: Vec<Vec<usize>>,
    pub j_classes: Vec<Vec<usize>>,
    pub h_classes: Vec<Vec<usize>>,
}

impl GreenStructure {
    pub fn r_related(&self, a: usize, b: usize) -> bool {
        self.r_class_of[a] == self.r_class_of[b]
    }

    pub fn l_related(&self, a: usize, b: usize) -> bool {
        self.l_class_of[a] == self.l_class_of[b]
    }

    pub fn j_related(&self, a: usize, b: usize) -> bool {
        self.j_class_of[a] == self.j_class_of[b]
    }

    pub fn h_related(&self, a: usize, b: usize) -> bool {
        self.h_class_of[a] == self.h_class_of[b]
    }
}

/// Iterative Tarjan; returns the component id of each node, ids unordered.
fn tarjan_scc(n: usize, adj: &[Vec<u32>]) -> Vec<usize> {
    const UNSET: u32 = u32::MAX;
    let mut index = vec![UNSET; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0u32;
    let mut comps = 0usize;
    // call stack of (node, next edge offset)
    let mut frames: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if index[root] != UNSET {
            continue;
        }
        frames.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut ei)) = frames.last_mut() {
            if *ei < adj[v].len() {
                let w = adj[v][*ei] as usize;
                *ei += 1;
                if index[w] == UNSET {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(&(parent, _)) = frames.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp[w] = comps;
                        if w == v {
                            break;
                        }
                    }
                    comps += 1;
                }
            }
        }
    }
    comp
}

/// Renumber class ids by smallest member and collect sorted member lists.
fn canonical_classes(raw: &[usize]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let count = raw.iter().copied().max().map_or(0, |m| m + 1);
    let mut first_member = vec![usize::MAX; count];
    for (el, &c) in raw.iter().enumerate() {
        first_member[c] = first_member[c].min(el);
    }
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by_key(|&c| first_member[c]);
    let mut new_id = vec![0usize; count];
    for (rank, &c) in order.iter().enumerate() {
        new_id[c] = rank;
    }
    let class_of: Vec<usize> = raw.iter().map(|&c| new_id[c]).collect();
    let mut classes = vec![Vec::new(); count];
    for (el, &c) in class_of.iter().enumerate() {
        classes[c].push(el);
    }
    (class_of, classes)
}

/// Compute all four Green's relations of the monoid.
pub fn green_classes(t: &MulTable) -> GreenStructure {
    let m = t.size();
    let gens = t.generators();
    let mut right = vec![Vec::with_capacity(gens.len()); m];
    let mut left = vec![Vec::with_capacity(gens.len()); m];
    let mut both = vec![Vec::with_capacity(2 * gens.len()); m];
    for a in 0..m {
        for &g in gens {
            let ag = t.product(a, g) as u32;
            let ga = t.product(g, a) as u32;
            right[a].push(ag);
            left[a].push(ga);
            both[a].push(ag);
            both[a].push(ga);
        }
    }
    let (r_class_of, r_classes) = canonical_classes(&tarjan_scc(m, &right));
    let (l_class_of, l_classes) = canonical_classes(&tarjan_scc(m, &left));
    let (j_class_of, j_classes) = canonical_classes(&tarjan_scc(m, &both));
    // H = R meet L: classes are the distinct (r, l) pairs
    let mut pair_ids: std::collections::HashMap<(usize, usize), usize> =
        std::collections::HashMap::new();
    let mut h_raw = vec![0usize; m];
    for el in 0..m {
        let key = (r_class_of[el], l_class_of[el]);
        let next = pair_ids.len();
        let id = *pair_ids.entry(key).or_insert(next);
        h_raw[el] = id;
    }
    let (h_class_of, h_classes) = canonical_classes(&h_raw);
    GreenStructure {
        r_class_of,
        l_class_of,
        j_class_of,
        h_class_of,
        r_classes,
        l_classes,
        j_classes,
        h_classes,
    }
}

/// All e with e*e = e.
pub fn idempotents(t: &MulTable) -> Vec<usize> {
    (0..t.size()).filter(|&e| t.product(e, e) == e).collect()
}

/// A finite monoid is aperiodic iff its H-relation is trivial.
pub fn is_aperiodic(g: &GreenStructure) -> bool {
    g.h_classes.iter().all(|c| c.len() == 1)
}

/// The three J-classes of J_5, labelled by rank.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum JClassLabel {
    A1,
    A2,
    A3,
}

/// Rank classification of a J_5 element: 5 t-wires is the identity class,
/// 3 the hook class, 1 the minimal ideal.
pub fn jclass_label_j5(d: &Diagram) -> Result<JClassLabel, StructureError> {
    if d.n() != 5 {
        return Err(StructureError::NotFiveStrands(d.n()));
    }
    Ok(match d.rank() {
        5 => JClassLabel::A1,
        3 => JClassLabel::A2,
        1 => JClassLabel::A3,
        r => unreachable!("rank {r} impossible on 5 strands"),
    })
}

/// One J-class of the egg-box picture: rows are R-classes, columns are
/// L-classes, and every cell is one H-class.
#[derive(Clone, Debug)]
pub struct JClassBox {
    pub rank: usize,
    pub size: usize,
    pub r_class_count: usize,
    pub l_class_count: usize,
    pub regular: bool,
    pub idempotent_count: usize,
    /// element index per cell; H-classes of J_n are singletons
    pub grid: Vec<Vec<usize>>,
    pub idempotent_cell: Vec<Vec<bool>>,
}

#[derive(Clone, Debug)]
pub struct EggBox {
    pub classes: Vec<JClassBox>,
}

#[derive(Serialize)]
struct JClassSummary {
    rank: usize,
    size: usize,
    r_classes: usize,
    l_classes: usize,
    regular: bool,
    idempotent_count: usize,
}

impl EggBox {
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<JClassSummary> = self
            .classes
            .iter()
            .map(|c| JClassSummary {
                rank: c.rank,
                size: c.size,
                r_classes: c.r_class_count,
                l_classes: c.l_class_count,
                regular: c.regular,
                idempotent_count: c.idempotent_count,
            })
            .collect();
        serde_json::to_value(rows).expect("egg-box serializes")
    }

    /// Grid rendering, one block per J-class, `*` marking idempotent cells.
    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        for c in &self.classes {
            writeln!(
                out,
                "rank {}  size {}  {} R-classes x {} L-classes  {}  idempotents {}",
                c.rank,
                c.size,
                c.r_class_count,
                c.l_class_count,
                if c.regular { "regular" } else { "non-regular" },
                c.idempotent_count,
            )
            .unwrap();
            let width = c
                .grid
                .iter()
                .flatten()
                .map(|e| e.to_string().len())
                .max()
                .unwrap_or(1);
            for (row, marks) in c.grid.iter().zip(&c.idempotent_cell) {
                out.push_str("  ");
                for (el, &idem) in row.iter().zip(marks) {
                    let mark = if idem { "*" } else { " " };
                    write!(out, " {el:>width$}{mark}").unwrap();
                }
                out.push('\n');
            }
        }
        out
    }
}

/// Egg-box picture of a Jones table: J-classes ordered by rank descending,
/// with per-class grid, regularity, and idempotent positions.
pub fn eggbox_report(t: &MonoidTable, g: &GreenStructure) -> EggBox {
    let idems: std::collections::HashSet<usize> = idempotents(t.mul()).into_iter().collect();
    let mut classes = Vec::new();
    for members in &g.j_classes {
        let rank = t.element(members[0]).rank();
        debug_assert!(members.iter().all(|&e| t.element(e).rank() == rank));
        let mut r_ids: Vec<usize> = members.iter().map(|&e| g.r_class_of[e]).collect();
        r_ids.sort_unstable();
        r_ids.dedup();
        let mut l_ids: Vec<usize> = members.iter().map(|&e| g.l_class_of[e]).collect();
        l_ids.sort_unstable();
        l_ids.dedup();
        let mut grid = vec![vec![usize::MAX; l_ids.len()]; r_ids.len()];
        for &e in members {
            let row = r_ids.binary_search(&g.r_class_of[e]).unwrap();
            let col = l_ids.binary_search(&g.l_class_of[e]).unwrap();
            assert_eq!(
                grid[row][col],
                usize::MAX,
                "H-classes of a Jones table are singletons"
            );
            grid[row][col] = e;
        }
        assert!(
            grid.iter().flatten().all(|&e| e != usize::MAX),
            "every R-class must meet every L-class inside a J-class"
        );
        let idempotent_cell: Vec<Vec<bool>> = grid
            .iter()
            .map(|row| row.iter().map(|e| idems.contains(e)).collect())
            .collect();
        let idempotent_count = idempotent_cell.iter().flatten().filter(|&&b| b).count();
        classes.push(JClassBox {
            rank,
            size: members.len(),
            r_class_count: r_ids.len(),
            l_class_count: l_ids.len(),
            regular: idempotent_count > 0,
            idempotent_count,
            grid,
            idempotent_cell,
        });
    }
    classes.sort_by(|a, b| b.rank.cmp(&a.rank));
    EggBox { classes }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{enumerate_jones, eval_generator_word};
    use crate::table::MulTable;

    fn j5() -> MonoidTable {
        enumerate_jones(5).unwrap()
    }

    #[test]
    fn j5_has_three_j_classes() {
        let t = j5();
        let g = green_classes(t.mul());
        assert_eq!(g.j_classes.len(), 3);
        let mut sizes: Vec<usize> = g.j_classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 16, 25]);
    }

    #[test]
    fn h1_and_h1h2_share_an_r_class() {
        let t = j5();
        let g = green_classes(t.mul());
        let h1 = t.generator_indices()[0];
        let h2 = t.generator_indices()[1];
        let h1h2 = t.product(h1, h2);
        // two table lookups certify mutual reachability
        assert_eq!(t.product(h1, h2), h1h2);
        assert_eq!(t.product(h1h2, h1), h1);
        assert!(g.r_related(h1, h1h2));
    }

    #[test]
    fn trivial_monoid() {
        let t = MulTable::new(1, 0, vec![0], vec![0]).unwrap();
        let g = green_classes(&t);
        assert_eq!(g.r_classes.len(), 1);
        assert_eq!(g.l_classes.len(), 1);
        assert_eq!(g.j_classes.len(), 1);
        assert_eq!(g.h_classes.len(), 1);
        assert!(is_aperiodic(&g));
    }

    #[test]
    fn idempotent_examples() {
        let t = j5();
        let idems = idempotents(t.mul());
        assert!(idems.contains(&t.identity_index()));
        for &g in t.generator_indices() {
            assert!(idems.contains(&g));
        }
        let e = t.eval_subscripts(&[1, 2, 3, 4]);
        assert!(!idems.contains(&e));
        // its square drops to the minimal rank
        assert_eq!(t.element(e).rank(), 3);
        assert_eq!(t.element(t.product(e, e)).rank(), 1);
    }

    #[test]
    fn aperiodicity() {
        let g5 = green_classes(j5().mul());
        assert!(is_aperiodic(&g5));
        let t4 = enumerate_jones(4).unwrap();
        assert!(is_aperiodic(&green_classes(t4.mul())));
        // 2-element group: one nontrivial H-class
        let z2 = MulTable::new(2, 0, vec![1], vec![0, 1, 1, 0]).unwrap();
        assert!(!is_aperiodic(&green_classes(&z2)));
    }

    #[test]
    fn j5_eggbox() {
        let t = j5();
        let g = green_classes(t.mul());
        let eb = eggbox_report(&t, &g);
        assert_eq!(eb.classes.len(), 3);
        let summary: Vec<(usize, usize, usize, usize, bool)> = eb
            .classes
            .iter()
            .map(|c| (c.rank, c.size, c.r_class_count, c.l_class_count, c.regular))
            .collect();
        assert_eq!(
            summary,
            vec![
                (5, 1, 1, 1, true),
                (3, 16, 4, 4, true),
                (1, 25, 5, 5, true),
            ]
        );
    }

    #[test]
    fn label_examples() {
        let t = j5();
        assert_eq!(
            jclass_label_j5(t.element(t.identity_index())).unwrap(),
            JClassLabel::A1
        );
        let h2 = eval_generator_word(5, &[2]).unwrap();
        assert_eq!(jclass_label_j5(&h2).unwrap(), JClassLabel::A2);
        let h2h4 = eval_generator_word(5, &[2, 4]).unwrap();
        assert_eq!(jclass_label_j5(&h2h4).unwrap(), JClassLabel::A3);
        let d4 = eval_generator_word(4, &[1]).unwrap();
        assert_eq!(
            jclass_label_j5(&d4),
            Err(StructureError::NotFiveStrands(4))
        );
    }

    #[test]
    fn rank_classification_matches_scc_j_classes() {
        for n in 1..=6 {
            let t = enumerate_jones(n).unwrap();
            let g = green_classes(t.mul());
            for a in 0..t.len() {
                for b in 0..t.len() {
                    let same_rank = t.element(a).rank() == t.element(b).rank();
                    assert_eq!(g.j_related(a, b), same_rank, "n={n} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn minimal_ideal_absorbs() {
        let t = j5();
        let bottom: Vec<usize> = (0..t.len())
            .filter(|&e| t.element(e).rank() == 1)
            .collect();
        assert_eq!(bottom.len(), 25);
        for a in 0..t.len() {
            for &b in &bottom {
                assert_eq!(t.element(t.product(a, b)).rank(), 1);
                assert_eq!(t.element(t.product(b, a)).rank(), 1);
            }
        }
    }

    #[test]
    fn eggbox_grid_is_complete_for_small_n() {
        for n in 2..=6 {
            let t = enumerate_jones(n).unwrap();
            let g = green_classes(t.mul());
            let eb = eggbox_report(&t, &g);
            let total: usize = eb.classes.iter().map(|c| c.size).sum();
            assert_eq!(total, t.len());
            for c in &eb.classes {
                assert_eq!(c.size, c.r_class_count * c.l_class_count);
                assert!(c.regular);
            }
        }
    }
}
