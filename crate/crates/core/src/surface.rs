//! Carter surface of a Gauss code as a ribbon graph, chord indices and
//! surface linking numbers.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::kernel::{KnotCode, LinkCode, Passage, Pos, Sign};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("no crossing with id {0}")]
    UnknownId(u32),
    #[error("bad component pair ({0}, {1})")]
    BadComponent(usize, usize),
}

/// Slots of the four half-edges at a crossing.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Slot {
    OverIn,
    OverOut,
    UnderIn,
    UnderOut,
}

/// Counter-clockwise order of the slots around a crossing.
fn rotation(sign: Sign) -> [Slot; 4] {
    use Slot::*;
    match sign {
        Sign::Pos => [OverOut, UnderOut, OverIn, UnderIn],
        Sign::Neg => [UnderOut, OverOut, UnderIn, OverIn],
    }
}

/// Ribbon graph of the Carter surface.
///
/// Edge `k` runs from flattened token `k` to its successor; its darts are
/// `2k` (leaving token `k`) and `2k + 1` (entering the successor).
#[derive(Clone, Debug)]
pub struct RibbonGraph {
    positions: Vec<Pos>,
    /// vertex (crossing) of each dart
    vertex: Vec<usize>,
    face_of: Vec<usize>,
    faces: Vec<Vec<usize>>,
    vertices: usize,
    free_loops: usize,
}

impl RibbonGraph {
    pub fn new(code: &LinkCode) -> Self {
        let positions: Vec<Pos> = code.tokens().map(|(p, _)| p).collect();
        let flat: BTreeMap<Pos, usize> = positions.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let prev = |p: Pos| -> Pos {
            let len = code.component(p.0).len();
            (p.0, (p.1 + len - 1) % len)
        };
        let n_darts = 2 * positions.len();
        let mut vertex = vec![0; n_darts];
        let mut sigma = vec![0; n_darts];
        let passages = code.passages();
        for (v, info) in passages.values().enumerate() {
            let dart = |slot: Slot| -> usize {
                match slot {
                    Slot::OverOut => 2 * flat[&info.over],
                    Slot::OverIn => 2 * flat[&prev(info.over)] + 1,
                    Slot::UnderOut => 2 * flat[&info.under],
                    Slot::UnderIn => 2 * flat[&prev(info.under)] + 1,
                }
            };
            let rot = rotation(info.sign);
            for i in 0..4 {
                let d = dart(rot[i]);
                vertex[d] = v;
                sigma[d] = dart(rot[(i + 1) % 4]);
            }
        }
        let mut face_of = vec![usize::MAX; n_darts];
        let mut faces = Vec::new();
        for start in 0..n_darts {
            if face_of[start] != usize::MAX {
                continue;
            }
            let mut cycle = Vec::new();
            let mut d = start;
            while face_of[d] == usize::MAX {
                face_of[d] = faces.len();
                cycle.push(d);
                d = sigma[d ^ 1];
            }
            faces.push(cycle);
        }
        let free_loops = code.components().iter().filter(|c| c.is_empty()).count();
        Self { positions, vertex, face_of, faces, vertices: passages.len(), free_loops }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.positions.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Boundary cycles as lists of darts.
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    /// Faces on the right and left of the edge leaving the token at `k`
    /// (flattened index).
    pub fn edge_faces(&self, k: usize) -> (usize, usize) {
        (self.face_of[2 * k], self.face_of[2 * k + 1])
    }

    /// Connected components as lists of vertices; crossing-free components
    /// are not included.
    fn vertex_components(&self) -> Vec<usize> {
        let mut label: Vec<usize> = (0..self.vertices).collect();
        fn find(label: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while label[r] != r {
                r = label[r];
            }
            let mut y = x;
            while label[y] != r {
                let n = label[y];
                label[y] = r;
                y = n;
            }
            r
        }
        for k in 0..self.positions.len() {
            let (a, b) = (find(&mut label, self.vertex[2 * k]), find(&mut label, self.vertex[2 * k + 1]));
            label[a] = b;
        }
        (0..self.vertices).map(|v| find(&mut label, v)).collect()
    }

    /// Sum of the genera of the connected components.
    pub fn genus(&self) -> usize {
        let comp = self.vertex_components();
        let mut chi: BTreeMap<usize, i64> = BTreeMap::new();
        for &c in &comp[..self.vertices] {
            *chi.entry(c).or_default() += 1;
        }
        for k in 0..self.positions.len() {
            *chi.entry(comp[self.vertex[2 * k]]).or_default() -= 1;
        }
        for f in &self.faces {
            *chi.entry(comp[self.vertex[f[0]]]).or_default() += 1;
        }
        chi.values()
            .map(|&x| {
                debug_assert!(x <= 2 && x % 2 == 0, "Euler characteristic {x}");
                ((2 - x) / 2) as usize
            })
            .sum()
    }

    /// Euler characteristic V − E + F of the closed surface, crossing-free
    /// components counted as spheres.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.positions.len() as i64 + self.faces.len() as i64 + 2 * self.free_loops as i64
    }
}

pub fn carter_genus(code: &LinkCode) -> usize {
    RibbonGraph::new(code).genus()
}

/// Chord indices keyed by crossing id.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ChordIndexTable(pub BTreeMap<u32, i32>);

impl ChordIndexTable {
    pub fn get(&self, id: u32) -> Option<i32> {
        self.0.get(&id).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, i32)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|(&k, &v)| (k, -v)).collect())
    }
}

/// Index of every chord. For chord `c`, each chord `d` with exactly one
/// endpoint on the arc from `U_c` forward to `O_c` contributes `+sign(d)`
/// when that endpoint is `O_d`, and `-sign(d)` when it is `U_d`.
pub fn index_table(code: &KnotCode) -> ChordIndexTable {
    let tokens = code.tokens();
    let n = tokens.len();
    let passages = code.passages();
    let mut table = BTreeMap::new();
    for (&c, info) in &passages {
        let (u, o) = (info.under.1, info.over.1);
        let mut idx = 0;
        let mut i = (u + 1) % n;
        while i != o {
            let t = &tokens[i];
            // the partner must lie outside the arc for d to interleave with c
            let partner = if t.is_over() { passages[&t.id].under.1 } else { passages[&t.id].over.1 };
            if t.id != c && !on_open_arc(u, o, partner, n) {
                idx += if t.passage == Passage::Over { t.sign.to_i32() } else { -t.sign.to_i32() };
            }
            i = (i + 1) % n;
        }
        table.insert(c, idx);
    }
    ChordIndexTable(table)
}

fn on_open_arc(from: usize, to: usize, x: usize, n: usize) -> bool {
    let d = (x + n - from) % n;
    d != 0 && d < (to + n - from) % n
}

pub fn chord_index(code: &KnotCode, id: u32) -> Result<i32, SurfaceError> {
    index_table(code).get(id).ok_or(SurfaceError::UnknownId(id))
}

pub fn is_almost_classical(code: &KnotCode) -> bool {
    index_table(code).iter().all(|(_, v)| v == 0)
}

/// Brute-force Alexander numbering of the faces of the Carter surface:
/// integers on faces with left − right = 1 across every edge. Returns the
/// face labels if such a numbering exists.
pub fn alexander_numbering(code: &LinkCode) -> Option<Vec<i64>> {
    let g = RibbonGraph::new(code);
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); g.face_count()];
    for k in 0..g.edge_count() {
        let (right, left) = g.edge_faces(k);
        adj[right].push((left, 1));
        adj[left].push((right, -1));
    }
    let mut label = vec![None; g.face_count()];
    for s in 0..g.face_count() {
        if label[s].is_some() {
            continue;
        }
        label[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(f) = queue.pop_front() {
            let lf = label[f].unwrap();
            for &(h, d) in &adj[f] {
                match label[h] {
                    None => {
                        label[h] = Some(lf + d);
                        queue.push_back(h);
                    }
                    Some(lh) if lh != lf + d => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(label.into_iter().map(Option::unwrap).collect())
}

/// Signed count of crossings where component `i` passes over component `j`.
pub fn linking_number(link: &LinkCode, i: usize, j: usize) -> Result<i32, SurfaceError> {
    let m = link.num_components();
    if i == j || i >= m || j >= m {
        return Err(SurfaceError::BadComponent(i, j));
    }
    Ok(link.passages().values().filter(|x| x.over.0 == i && x.under.0 == j).map(|x| x.sign.to_i32()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn link(s: &str) -> LinkCode {
        s.parse().unwrap()
    }

    fn knot(s: &str) -> KnotCode {
        s.parse().unwrap()
    }

    #[test]
    fn genus_examples() {
        assert_eq!(carter_genus(&link("")), 0);
        assert_eq!(carter_genus(&link("O1+ U2+ O3+ U1+ O2+ U3+")), 0);
        let g = RibbonGraph::new(&link("O1+ O2+ U1+ U2+"));
        assert_eq!((g.vertex_count(), g.edge_count(), g.face_count()), (2, 4, 2));
        assert_eq!(g.genus(), 1);
        assert_eq!(carter_genus(&link("O1+ U1+")), 0);
        assert_eq!(carter_genus(&link(" / ")), 0);
    }

    #[test]
    fn virtual_trefoil_indices() {
        let t = index_table(&knot("O1+ O2+ U1+ U2+"));
        assert_eq!(t.get(1), Some(-1));
        assert_eq!(t.get(2), Some(1));
        assert!(!is_almost_classical(&knot("O1+ O2+ U1+ U2+")));
        assert!(is_almost_classical(&knot("O1+ U2+ O3+ U1+ O2+ U3+")));
        assert!(index_table(&KnotCode::unknot()).is_empty());
        assert_eq!(chord_index(&knot("O1+ U1+"), 7), Err(SurfaceError::UnknownId(7)));
    }

    #[test]
    fn linking_examples() {
        let l = link("O1+ / U1+");
        assert_eq!(linking_number(&l, 0, 1), Ok(1));
        assert_eq!(linking_number(&l, 1, 0), Ok(0));
        let hopf = link("O1+ U2+ / U1+ O2+");
        assert_eq!(linking_number(&hopf, 0, 1), Ok(1));
        assert_eq!(linking_number(&hopf, 1, 0), Ok(1));
        assert!(linking_number(&hopf, 0, 0).is_err());
        assert_eq!(linking_number(&link(" / "), 0, 1), Ok(0));
    }

    #[test]
    fn numbering_matches_index_on_small_examples() {
        assert!(alexander_numbering(&link("O1+ U2+ O3+ U1+ O2+ U3+")).is_some());
        assert!(alexander_numbering(&link("O1+ O2+ U1+ U2+")).is_none());
        assert!(alexander_numbering(&link("")).is_some());
    }
}
