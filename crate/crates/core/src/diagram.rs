//! Planar wire diagrams: the elements of the Jones monoid J_n.
//!
//! A diagram on n strands is a non-crossing perfect matching of 2n boundary
//! points, n on the left and n on the right. Composition glues the right
//! points of the first diagram to the left points of the second and traces
//! wires through; closed interior loops are discarded. The monoid is
//! enumerated by breadth-first closure from the identity under right
//! multiplication by the hook generators, and its cardinality is the n-th
//! Catalan number.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::table::{MulTable, TableError};

/// Default upper bound on the strand count for monoid enumeration. The
/// table is Catalan-sized, so the cap mostly protects memory.
pub const DEFAULT_STRAND_CAP: usize = 8;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("strand count must be at least 1")]
    ZeroStrands,
    #[error("generator subscript {index} out of range 1..={max} for n = {n}")]
    GeneratorOutOfRange { n: usize, index: usize, max: usize },
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("strand count {n} exceeds cap {cap}")]
    StrandCapExceeded { n: usize, cap: usize },
    #[error("point index {index} out of range 1..={n}")]
    PointOutOfRange { n: usize, index: usize },
    #[error("blocks do not form a perfect matching of the {points} boundary points")]
    MalformedMatching { points: usize },
    #[error("wires cross; the diagram is not planar")]
    Crossing,
    #[error("malformed diagram text: {0}")]
    BadText(String),
    #[error("table dump is inconsistent: {0}")]
    BadDump(String),
    #[error(transparent)]
    Table(#[from] TableError),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Side {
    Left,
    Right,
}

/// One of the 2n boundary points, `index` in `1..=n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Point {
    pub side: Side,
    pub index: usize,
}

impl Point {
    pub fn left(index: usize) -> Self {
        Point {
            side: Side::Left,
            index,
        }
    }

    pub fn right(index: usize) -> Self {
        Point {
            side: Side::Right,
            index,
        }
    }

    /// Position on the boundary walk 1, 2, ..., n, n', (n-1)', ..., 1'
    /// (0-based). Crossings are interleavings in this order.
    fn boundary_pos(self, n: usize) -> usize {
        match self.side {
            Side::Left => self.index - 1,
            Side::Right => 2 * n - self.index,
        }
    }

    fn from_boundary(pos: usize, n: usize) -> Self {
        if pos < n {
            Point::left(pos + 1)
        } else {
            Point::right(2 * n - pos)
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Left => write!(f, "{}", self.index),
            Side::Right => write!(f, "{}'", self.index),
        }
    }
}

/// Wire counts of a diagram: blocks joining two left points, two right
/// points, and one of each. The t-wire count is the diagram's rank.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct WireProfile {
    pub l_wires: usize,
    pub r_wires: usize,
    pub t_wires: usize,
}

/// A non-crossing perfect matching of the 2n boundary points, stored as a
/// partner array over boundary positions. The array is a canonical form:
/// two diagrams are equal iff their arrays are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    n: usize,
    partner: Vec<u16>,
}

impl Diagram {
    /// The diagram with blocks {i, i'} for all i; the two-sided identity.
    pub fn identity(n: usize) -> Result<Self, DiagramError> {
        if n == 0 {
            return Err(DiagramError::ZeroStrands);
        }
        let mut partner = vec![0u16; 2 * n];
        for i in 1..=n {
            let a = Point::left(i).boundary_pos(n);
            let b = Point::right(i).boundary_pos(n);
            partner[a] = b as u16;
            partner[b] = a as u16;
        }
        Ok(Diagram { n, partner })
    }

    /// The hook generator h_i: l-wire {i, i+1}, r-wire {i', (i+1)'}, and
    /// t-wires {j, j'} elsewhere. Requires 1 <= i <= n-1.
    pub fn generator(n: usize, i: usize) -> Result<Self, DiagramError> {
        if n == 0 {
            return Err(DiagramError::ZeroStrands);
        }
        if i == 0 || i >= n {
            return Err(DiagramError::GeneratorOutOfRange {
                n,
                index: i,
                max: n - 1,
            });
        }
        let mut d = Diagram::identity(n)?;
        let li = Point::left(i).boundary_pos(n);
        let li1 = Point::left(i + 1).boundary_pos(n);
        let ri = Point::right(i).boundary_pos(n);
        let ri1 = Point::right(i + 1).boundary_pos(n);
        d.partner[li] = li1 as u16;
        d.partner[li1] = li as u16;
        d.partner[ri] = ri1 as u16;
        d.partner[ri1] = ri as u16;
        Ok(d)
    }

    /// Validating constructor from explicit blocks. Rejects anything that
    /// is not a planar perfect matching into 2-element blocks.
    pub fn new(n: usize, blocks: &[(Point, Point)]) -> Result<Self, DiagramError> {
        let partner = matching_from_blocks(n, blocks)?;
        if !noncrossing(&partner) {
            return Err(DiagramError::Crossing);
        }
        Ok(Diagram { n, partner })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Blocks in canonical order: ascending by the smaller boundary
    /// position; within a block, left points before right, each side
    /// ascending by index.
    pub fn blocks(&self) -> Vec<(Point, Point)> {
        let n = self.n;
        let mut out = Vec::with_capacity(n);
        for pos in 0..2 * n {
            let q = self.partner[pos] as usize;
            if q > pos {
                let mut a = Point::from_boundary(pos, n);
                let mut b = Point::from_boundary(q, n);
                if b < a {
                    std::mem::swap(&mut a, &mut b);
                }
                out.push((a, b));
            }
        }
        out
    }

    /// Glue our right points to `other`'s left points, trace the wires,
    /// and discard closed interior loops.
    pub fn compose(&self, other: &Diagram) -> Result<Diagram, DiagramError> {
        if self.n != other.n {
            return Err(DiagramError::StrandMismatch(self.n, other.n));
        }
        let (d, _loops) = self.compose_counting_loops(other);
        Ok(d)
    }

    /// The composition walk over the 3n interface points. Interior cycles
    /// never reach an exterior point; they are recognized and dropped,
    /// which is what makes the hooks idempotent.
    fn compose_counting_loops(&self, other: &Diagram) -> (Diagram, usize) {
        let n = self.n;
        // nodes: 0..n our left points, n..2n the glued interface (right i
        // of self = left i of other), 2n..3n other's right points
        const NONE: u16 = u16::MAX;
        let mut via_a = vec![NONE; 3 * n];
        let mut via_b = vec![NONE; 3 * n];
        for pos in 0..2 * n {
            let q = self.partner[pos] as usize;
            if q > pos {
                let u = a_node(pos, n);
                let v = a_node(q, n);
                via_a[u] = v as u16;
                via_a[v] = u as u16;
            }
            let q = other.partner[pos] as usize;
            if q > pos {
                let u = b_node(pos, n);
                let v = b_node(q, n);
                via_b[u] = v as u16;
                via_b[v] = u as u16;
            }
        }
        let mut visited = vec![false; 3 * n];
        let mut partner = vec![0u16; 2 * n];
        let exterior = (0..n).chain(2 * n..3 * n);
        for start in exterior {
            if visited[start] {
                continue;
            }
            visited[start] = true;
            let mut cur = start;
            let mut use_a = start < n;
            loop {
                let nxt = if use_a { via_a[cur] } else { via_b[cur] } as usize;
                visited[nxt] = true;
                if nxt < n || nxt >= 2 * n {
                    let p = node_boundary_pos(start, n);
                    let q = node_boundary_pos(nxt, n);
                    partner[p] = q as u16;
                    partner[q] = p as u16;
                    break;
                }
                cur = nxt;
                use_a = !use_a;
            }
        }
        // whatever interface nodes remain lie on closed loops
        let mut loops = 0;
        for start in n..2 * n {
            if visited[start] {
                continue;
            }
            loops += 1;
            let mut cur = start;
            let mut use_a = true;
            while !visited[cur] {
                visited[cur] = true;
                cur = if use_a { via_a[cur] } else { via_b[cur] } as usize;
                use_a = !use_a;
            }
        }
        let d = Diagram { n, partner };
        debug_assert!(noncrossing(&d.partner));
        (d, loops)
    }

    pub fn wire_profile(&self) -> WireProfile {
        let n = self.n;
        let mut p = WireProfile {
            l_wires: 0,
            r_wires: 0,
            t_wires: 0,
        };
        for pos in 0..2 * n {
            let q = self.partner[pos] as usize;
            if q > pos {
                match (pos < n, q < n) {
                    (true, true) => p.l_wires += 1,
                    (false, false) => p.r_wires += 1,
                    _ => p.t_wires += 1,
                }
            }
        }
        p
    }

    /// Number of t-wires.
    pub fn rank(&self) -> usize {
        self.wire_profile().t_wires
    }
}

fn a_node(pos: usize, n: usize) -> usize {
    if pos < n {
        pos // own left point
    } else {
        n + (2 * n - pos) - 1 // right point i joins interface node n+i-1
    }
}

fn b_node(pos: usize, n: usize) -> usize {
    if pos < n {
        n + pos // other's left point i sits on interface node n+i-1
    } else {
        2 * n + (2 * n - pos) - 1
    }
}

fn node_boundary_pos(node: usize, n: usize) -> usize {
    if node < n {
        node
    } else {
        // other's right point i keeps index i in the result
        let i = node - 2 * n + 1;
        2 * n - i
    }
}

fn matching_from_blocks(n: usize, blocks: &[(Point, Point)]) -> Result<Vec<u16>, DiagramError> {
    if n == 0 {
        return Err(DiagramError::ZeroStrands);
    }
    let points = 2 * n;
    let mut partner = vec![u16::MAX; points];
    let mut seen = 0usize;
    for &(a, b) in blocks {
        for p in [a, b] {
            if p.index == 0 || p.index > n {
                return Err(DiagramError::PointOutOfRange { n, index: p.index });
            }
        }
        let pa = a.boundary_pos(n);
        let pb = b.boundary_pos(n);
        if pa == pb || partner[pa] != u16::MAX || partner[pb] != u16::MAX {
            return Err(DiagramError::MalformedMatching { points });
        }
        partner[pa] = pb as u16;
        partner[pb] = pa as u16;
        seen += 2;
    }
    if seen != points {
        return Err(DiagramError::MalformedMatching { points });
    }
    Ok(partner)
}

fn noncrossing(partner: &[u16]) -> bool {
    let len = partner.len();
    for a in 0..len {
        let b = partner[a] as usize;
        if b <= a {
            continue;
        }
        for c in a + 1..b {
            let d = partner[c] as usize;
            // a < c < b, so {a,b} and {c,d} interleave iff d falls outside (a,b)
            if d < a || d > b {
                return false;
            }
        }
    }
    true
}

/// True iff the given perfect matching has no interleaving blocks under
/// the boundary order. Rejects malformed matchings.
pub fn is_noncrossing(blocks: &[(Point, Point)], n: usize) -> Result<bool, DiagramError> {
    let partner = matching_from_blocks(n, blocks)?;
    Ok(noncrossing(&partner))
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in self.blocks() {
            write!(f, "{{{a},{b}}}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram(n={}, {})", self.n, self)
    }
}

impl FromStr for Diagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut blocks = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let Some(stripped) = rest.strip_prefix('{') else {
                return Err(DiagramError::BadText(format!("expected '{{' in {s:?}")));
            };
            let Some(end) = stripped.find('}') else {
                return Err(DiagramError::BadText(format!("unclosed block in {s:?}")));
            };
            let body = &stripped[..end];
            rest = &stripped[end + 1..];
            let parts: Vec<&str> = body.split(',').collect();
            if parts.len() != 2 {
                return Err(DiagramError::BadText(format!(
                    "block {{{body}}} must have exactly two points"
                )));
            }
            let mut pts = [Point::left(1); 2];
            for (slot, part) in pts.iter_mut().zip(parts) {
                let part = part.trim();
                let (digits, side) = match part.strip_suffix('\'') {
                    Some(d) => (d, Side::Right),
                    None => (part, Side::Left),
                };
                let index: usize = digits
                    .parse()
                    .map_err(|_| DiagramError::BadText(format!("bad point {part:?}")))?;
                *slot = Point { side, index };
            }
            blocks.push((pts[0], pts[1]));
        }
        if blocks.is_empty() {
            return Err(DiagramError::BadText("no blocks".into()));
        }
        Diagram::new(blocks.len(), &blocks)
    }
}

/// Fold the hook generators named by `subscripts` (each in 1..=n-1) into a
/// single diagram; the empty sequence yields the identity.
pub fn eval_generator_word(n: usize, subscripts: &[usize]) -> Result<Diagram, DiagramError> {
    let mut acc = Diagram::identity(n)?;
    for &i in subscripts {
        acc = acc.compose(&Diagram::generator(n, i)?)?;
    }
    Ok(acc)
}

/// n-th Catalan number C(2n, n) / (n + 1).
pub fn catalan(n: usize) -> u64 {
    let mut c: u128 = 1;
    for i in 0..n as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c as u64
}

/// The Jones monoid J_n, fully enumerated: indexed elements, generator
/// indices, and the complete multiplication table.
///
/// Indices are stable across runs: the identity is 0, the generators come
/// next in subscript order, and the rest follow breadth-first discovery
/// order under right multiplication by generators.
#[derive(Clone, PartialEq, Eq)]
pub struct MonoidTable {
    n: usize,
    elements: Vec<Diagram>,
    mul: MulTable,
}

impl MonoidTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> &[Diagram] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &Diagram {
        &self.elements[index]
    }

    pub fn mul(&self) -> &MulTable {
        &self.mul
    }

    pub fn identity_index(&self) -> usize {
        self.mul.identity()
    }

    pub fn generator_indices(&self) -> &[usize] {
        self.mul.generators()
    }

    #[inline]
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.mul.product(a, b)
    }

    pub fn index_of(&self, d: &Diagram) -> Option<usize> {
        self.elements.iter().position(|e| e == d)
    }

    /// Index of the product of a generator word (subscripts in 1..=n-1).
    pub fn eval_subscripts(&self, subscripts: &[usize]) -> usize {
        self.mul
            .fold(subscripts.iter().map(|&i| self.mul.generators()[i - 1]))
    }
}

/// Enumerate J_n with the default strand cap.
pub fn enumerate_jones(n: usize) -> Result<MonoidTable, DiagramError> {
    enumerate_jones_with_cap(n, DEFAULT_STRAND_CAP)
}

/// Breadth-first closure from the identity under right multiplication by
/// the generators, then the full product table. Asserts the Catalan count.
pub fn enumerate_jones_with_cap(n: usize, cap: usize) -> Result<MonoidTable, DiagramError> {
    if n == 0 {
        return Err(DiagramError::ZeroStrands);
    }
    if n > cap {
        return Err(DiagramError::StrandCapExceeded { n, cap });
    }
    let gens: Vec<Diagram> = (1..n)
        .map(|i| Diagram::generator(n, i))
        .collect::<Result<_, _>>()?;
    let mut elements = vec![Diagram::identity(n)?];
    let mut index: HashMap<Diagram, usize> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut next = 0;
    while next < elements.len() {
        let cur = elements[next].clone();
        for g in &gens {
            let p = cur.compose(g)?;
            if !index.contains_key(&p) {
                index.insert(p.clone(), elements.len());
                elements.push(p);
            }
        }
        next += 1;
    }
    assert_eq!(
        elements.len() as u64,
        catalan(n),
        "enumeration of J_{n} missed the Catalan count"
    );
    let size = elements.len();
    let mut products = vec![0u16; size * size];
    for a in 0..size {
        for b in 0..size {
            let p = elements[a].compose(&elements[b])?;
            products[a * size + b] = index[&p] as u16;
        }
    }
    let generator_indices: Vec<usize> = gens.iter().map(|g| index[g]).collect();
    let mul = MulTable::new(size, 0, generator_indices, products)?;
    Ok(MonoidTable { n, elements, mul })
}

#[derive(Serialize, Deserialize)]
struct TableDump {
    n: usize,
    elements: Vec<String>,
    generators: Vec<usize>,
    table: Vec<Vec<usize>>,
}

impl MonoidTable {
    pub fn to_json(&self) -> serde_json::Value {
        let dump = TableDump {
            n: self.n,
            elements: self.elements.iter().map(|d| d.to_string()).collect(),
            generators: self.mul.generators().to_vec(),
            table: self.mul.rows(),
        };
        serde_json::to_value(dump).expect("table dump serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("table dump serializes")
    }

    /// Rebuild a table from its JSON dump, revalidating the diagrams, the
    /// identity position, and the table dimensions.
    pub fn from_json_str(s: &str) -> Result<Self, DiagramError> {
        let dump: TableDump =
            serde_json::from_str(s).map_err(|e| DiagramError::BadDump(e.to_string()))?;
        let n = dump.n;
        let elements: Vec<Diagram> = dump
            .elements
            .iter()
            .map(|t| t.parse())
            .collect::<Result<_, _>>()?;
        if elements.iter().any(|d| d.n() != n) {
            return Err(DiagramError::BadDump("element strand count mismatch".into()));
        }
        let size = elements.len();
        if size as u64 != catalan(n) {
            return Err(DiagramError::BadDump(format!(
                "{size} elements, expected Catalan({n})"
            )));
        }
        let id = Diagram::identity(n)?;
        let Some(identity) = elements.iter().position(|d| *d == id) else {
            return Err(DiagramError::BadDump("identity diagram missing".into()));
        };
        let mut products = Vec::with_capacity(size * size);
        if dump.table.len() != size {
            return Err(DiagramError::BadDump("table row count mismatch".into()));
        }
        for row in &dump.table {
            if row.len() != size {
                return Err(DiagramError::BadDump("table row length mismatch".into()));
            }
            for &v in row {
                if v >= size {
                    return Err(DiagramError::BadDump(format!("entry {v} out of range")));
                }
                products.push(v as u16);
            }
        }
        let mul = MulTable::new(size, identity, dump.generators, products)?;
        Ok(MonoidTable { n, elements, mul })
    }
}
