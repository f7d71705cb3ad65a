//! `(u,v)`-diagrams: perfect matchings of `u` top points (covector slots
//! `T1..Tu`) and `v` bottom points (vector slots `B1..Bv`), and the signed
//! stacking product that drives the symplectic Brauer multiplication.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("u + v = {0} is odd")]
    OddSize(usize),
    #[error("vertex {0} outside the diagram")]
    BadVertex(String),
    #[error("vertex {0} is matched twice or with itself")]
    Repeated(String),
    #[error("vertex {0} is unmatched")]
    Unmatched(String),
    #[error("not a permutation: {0:?}")]
    BadPermutation(Vec<usize>),
    #[error("cannot parse diagram text {0:?}")]
    Parse(String),
}

/// A labelled point: `Top(i)` is `T_i`, `Bottom(j)` is `B_j` (1-based).
///
/// The derived order puts every top point before every bottom point and
/// orders each row left to right, so storing a pair as `(min, max)` gives the
/// edge orientation used by the form: top-top and bottom-bottom edges start
/// at their left end, through edges start at the top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Top(usize),
    Bottom(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Top(i) => write!(f, "T{i}"),
            Vertex::Bottom(j) => write!(f, "B{j}"),
        }
    }
}

impl FromStr for Vertex {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || DiagramError::Parse(s.to_string());
        let (row, num) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let k: usize = num.parse().map_err(|_| bad())?;
        match row {
            "T" => Ok(Vertex::Top(k)),
            "B" => Ok(Vertex::Bottom(k)),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    u: usize,
    v: usize,
    pairs: Vec<(Vertex, Vertex)>,
}

impl Diagram {
    /// Validates a matching and stores it in canonical form.
    pub fn new(u: usize, v: usize, pairs: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self, DiagramError> {
        if (u + v) % 2 != 0 {
            return Err(DiagramError::OddSize(u + v));
        }
        let mut seen_top = vec![false; u];
        let mut seen_bottom = vec![false; v];
        let mut out = Vec::new();
        for (a, b) in pairs {
            if a == b {
                return Err(DiagramError::Repeated(a.to_string()));
            }
            for x in [a, b] {
                let slot = match x {
                    Vertex::Top(i) if (1..=u).contains(&i) => &mut seen_top[i - 1],
                    Vertex::Bottom(j) if (1..=v).contains(&j) => &mut seen_bottom[j - 1],
                    _ => return Err(DiagramError::BadVertex(x.to_string())),
                };
                if *slot {
                    return Err(DiagramError::Repeated(x.to_string()));
                }
                *slot = true;
            }
            out.push((a.min(b), a.max(b)));
        }
        if let Some(i) = seen_top.iter().position(|s| !s) {
            return Err(DiagramError::Unmatched(Vertex::Top(i + 1).to_string()));
        }
        if let Some(j) = seen_bottom.iter().position(|s| !s) {
            return Err(DiagramError::Unmatched(Vertex::Bottom(j + 1).to_string()));
        }
        out.sort();
        Ok(Self { u, v, pairs: out })
    }

    /// Re-applies canonical orientation and ordering.
    pub fn canonical(&self) -> Self {
        let mut pairs: Vec<_> = self.pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort();
        Self { u: self.u, v: self.v, pairs }
    }

    pub fn empty() -> Self {
        Self { u: 0, v: 0, pairs: Vec::new() }
    }

    pub fn u(&self) -> usize {
        self.u
    }
    pub fn v(&self) -> usize {
        self.v
    }

    /// Edges as (initial point, terminal point).
    pub fn pairs(&self) -> &[(Vertex, Vertex)] {
        &self.pairs
    }

    pub fn mate(&self, x: Vertex) -> Option<Vertex> {
        self.pairs.iter().find_map(|&(a, b)| {
            if a == x {
                Some(b)
            } else if b == x {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn is_square(&self) -> bool {
        self.u == self.v
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u={},v={};[", self.u, self.v)?;
        for (k, (a, b)) in self.pairs.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}-{b}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Diagram {
    type Err = DiagramError;

    /// Parses `u=U,v=V;[T1-B2,...]`; an en dash is accepted in place of `-`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DiagramError::Parse(s.to_string());
        let s = s.trim();
        let (head, body) = s.split_once(';').ok_or_else(bad)?;
        let (us, vs) = head.split_once(',').ok_or_else(bad)?;
        let u: usize = us.trim().strip_prefix("u=").ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        let v: usize = vs.trim().strip_prefix("v=").ok_or_else(bad)?.trim().parse().map_err(|_| bad())?;
        let inner = body.trim().strip_prefix('[').and_then(|b| b.strip_suffix(']')).ok_or_else(bad)?;
        let mut pairs = Vec::new();
        for item in inner.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let item = item.replace('\u{2013}', "-");
            let (a, b) = item.split_once('-').ok_or_else(bad)?;
            pairs.push((a.parse()?, b.parse()?));
        }
        Diagram::new(u, v, pairs)
    }
}

/// `N_uv = (u+v-1)!!` when `u + v` is even, else 0.
pub fn count_diagrams(u: usize, v: usize) -> u128 {
    let w = u + v;
    if w % 2 != 0 {
        return 0;
    }
    (1..w as u128).step_by(2).product()
}

/// All `(u,v)`-diagrams in canonical form, sorted; empty when `u + v` is odd.
pub fn enumerate_diagrams(u: usize, v: usize) -> Vec<Diagram> {
    if (u + v) % 2 != 0 {
        return Vec::new();
    }
    let points: Vec<Vertex> = (1..=u).map(Vertex::Top).chain((1..=v).map(Vertex::Bottom)).collect();
    let mut out = Vec::new();
    let mut used = vec![false; points.len()];
    let mut acc = Vec::new();
    fn rec(points: &[Vertex], used: &mut [bool], acc: &mut Vec<(Vertex, Vertex)>, out: &mut Vec<Vec<(Vertex, Vertex)>>) {
        let Some(first) = used.iter().position(|x| !x) else {
            out.push(acc.clone());
            return;
        };
        used[first] = true;
        for k in first + 1..points.len() {
            if !used[k] {
                used[k] = true;
                acc.push((points[first], points[k]));
                rec(points, used, acc, out);
                acc.pop();
                used[k] = false;
            }
        }
        used[first] = false;
    }
    rec(&points, &mut used, &mut acc, &mut out);
    let mut diagrams: Vec<Diagram> = out
        .into_iter()
        .map(|p| Diagram::new(u, v, p).expect("enumerated matching is valid"))
        .collect();
    diagrams.sort();
    diagrams
}

/// All diagrams with `u, v <= s`, ordered by `(u, v)` then canonically.
pub fn basis(s: usize) -> Vec<Diagram> {
    let mut out = Vec::new();
    for u in 0..=s {
        for v in 0..=s {
            out.extend(enumerate_diagrams(u, v));
        }
    }
    out
}

/// `c_r`: the identity `(r,r)`-diagram.
pub fn special_c(r: usize) -> Diagram {
    Diagram::new(r, r, (1..=r).map(|i| (Vertex::Top(i), Vertex::Bottom(i)))).expect("valid")
}

/// `b_r`: the `(r, r+2)`-diagram with a cap `B1-B2` and through edges `Ti-B(i+2)`.
pub fn special_b(r: usize) -> Diagram {
    let mut pairs = vec![(Vertex::Bottom(1), Vertex::Bottom(2))];
    pairs.extend((1..=r).map(|i| (Vertex::Top(i), Vertex::Bottom(i + 2))));
    Diagram::new(r, r + 2, pairs).expect("valid")
}

/// `b̄_r`: the `(r+2, r)`-diagram with a cup `T1-T2` and through edges `T(i+2)-Bi`.
pub fn special_bbar(r: usize) -> Diagram {
    let mut pairs = vec![(Vertex::Top(1), Vertex::Top(2))];
    pairs.extend((1..=r).map(|i| (Vertex::Top(i + 2), Vertex::Bottom(i))));
    Diagram::new(r + 2, r, pairs).expect("valid")
}

/// A permutation of `{0, .., r-1}` stored by images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, DiagramError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(DiagramError::BadPermutation(images));
            }
            seen[i] = true;
        }
        Ok(Self(images))
    }

    /// From 1-based images `pi_1..pi_r`.
    pub fn from_one_based(images: &[usize]) -> Result<Self, DiagramError> {
        if images.contains(&0) {
            return Err(DiagramError::BadPermutation(images.to_vec()));
        }
        Self::new(images.iter().map(|i| i - 1).collect())
    }

    pub fn identity(r: usize) -> Self {
        Self((0..r).collect())
    }

    /// The transposition of positions `i` and `i + 1` (0-based).
    pub fn adjacent_transposition(r: usize, i: usize) -> Self {
        let mut p: Vec<usize> = (0..r).collect();
        p.swap(i, i + 1);
        Self(p)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len());
        Self(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Self(inv)
    }

    /// All permutations of `r` symbols in lexicographic order.
    pub fn all(r: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..r).collect();
        loop {
            out.push(Self(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..r).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..r).rev().find(|&j| cur[j] > cur[i - 1]).expect("exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

/// The `(r,r)`-diagram matching `x_i` with `y_{pi_i}`.
pub fn embed_permutation(pi: &Permutation) -> Diagram {
    let r = pi.len();
    Diagram::new(r, r, (0..r).map(|i| (Vertex::Top(pi.apply(i) + 1), Vertex::Bottom(i + 1)))).expect("valid")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackResult {
    /// Number of closed loops in the middle row.
    pub gamma: usize,
    /// `+1` or `-1`.
    pub sign: i8,
    pub result: Diagram,
}

/// Row of a vertex of the stacked graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Top,
    Middle,
    Bottom,
}

/// One path or cycle of the stacked graph, oriented, with its middle-row
/// edge counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub closed: bool,
    /// Walk as (level, 1-based position); for cycles the start is not repeated.
    pub walk: Vec<(Level, usize)>,
    pub left_to_right: usize,
    pub right_to_left: usize,
}

impl Component {
    pub fn sign(&self) -> i8 {
        component_sign(self.left_to_right, self.right_to_left)
    }
}

/// `(-1)^{|lr - rl|/2}` for even `lr + rl`, `(-1)^{|lr - rl - 1|/2}` for odd.
pub fn component_sign(lr: usize, rl: usize) -> i8 {
    let d = lr as i64 - rl as i64;
    let e = if (lr + rl) % 2 == 0 { d.abs() / 2 } else { (d - 1).abs() / 2 };
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Stacked graph of `top` over `bottom`, middle row identified.
struct Stacked {
    u: usize,
    mid: usize,
    w: usize,
    // neighbour via an edge of `top` / of `bottom`
    up: Vec<Option<usize>>,
    down: Vec<Option<usize>>,
}

impl Stacked {
    fn build(top: &Diagram, bottom: &Diagram) -> Self {
        let (u, mid, w) = (top.u, top.v, bottom.v);
        let total = u + mid + w;
        let mut up = vec![None; total];
        let mut down = vec![None; total];
        let idx_top = |x: Vertex| match x {
            Vertex::Top(i) => i - 1,
            Vertex::Bottom(j) => u + j - 1,
        };
        let idx_bottom = |x: Vertex| match x {
            Vertex::Top(i) => u + i - 1,
            Vertex::Bottom(j) => u + mid + j - 1,
        };
        for &(a, b) in &top.pairs {
            let (a, b) = (idx_top(a), idx_top(b));
            up[a] = Some(b);
            up[b] = Some(a);
        }
        for &(a, b) in &bottom.pairs {
            let (a, b) = (idx_bottom(a), idx_bottom(b));
            down[a] = Some(b);
            down[b] = Some(a);
        }
        Self { u, mid, w, up, down }
    }

    fn locate(&self, x: usize) -> (Level, usize) {
        if x < self.u {
            (Level::Top, x + 1)
        } else if x < self.u + self.mid {
            (Level::Middle, x - self.u + 1)
        } else {
            (Level::Bottom, x - self.u - self.mid + 1)
        }
    }

    fn count_middle(&self, walk: &[usize], closed: bool) -> (usize, usize) {
        let mut lr = 0;
        let mut rl = 0;
        let steps = walk.len() - usize::from(!closed);
        for k in 0..steps {
            let (a, b) = (walk[k], walk[(k + 1) % walk.len()]);
            let (la, pa) = self.locate(a);
            let (lb, pb) = self.locate(b);
            if la == Level::Middle && lb == Level::Middle {
                if pb > pa {
                    lr += 1;
                } else {
                    rl += 1;
                }
            }
        }
        (lr, rl)
    }

    fn components(&self, reverse_scan: bool) -> Vec<Component> {
        let total = self.u + self.mid + self.w;
        let mut visited = vec![false; total];
        let mut out = Vec::new();
        let outer: Vec<usize> = (0..self.u).chain(self.u + self.mid..total).collect();
        let scan: Vec<usize> = if reverse_scan { outer.into_iter().rev().collect() } else { outer };
        for start in scan {
            if visited[start] {
                continue;
            }
            let mut walk = vec![start];
            visited[start] = true;
            // outer vertices have exactly one edge
            let mut came_by_up = start < self.u;
            let mut cur = if came_by_up { self.up[start] } else { self.down[start] }.expect("matched");
            loop {
                walk.push(cur);
                visited[cur] = true;
                if self.locate(cur).0 != Level::Middle {
                    break;
                }
                // leave by the other diagram's edge
                let next = if came_by_up { self.down[cur] } else { self.up[cur] }.expect("middle vertex has degree 2");
                came_by_up = !came_by_up;
                cur = next;
            }
            // orient: even length from the top end, odd length from the left end
            let (first, last) = (self.locate(walk[0]), self.locate(*walk.last().unwrap()));
            let edges = walk.len() - 1;
            let forward = if edges % 2 == 0 { first.0 == Level::Top } else { first.1 < last.1 };
            if !forward {
                walk.reverse();
            }
            let (lr, rl) = self.count_middle(&walk, false);
            out.push(Component {
                closed: false,
                walk: walk.iter().map(|&x| self.locate(x)).collect(),
                left_to_right: lr,
                right_to_left: rl,
            });
        }
        let middle: Vec<usize> = (self.u..self.u + self.mid).collect();
        let scan: Vec<usize> = if reverse_scan { middle.into_iter().rev().collect() } else { middle };
        for start in scan {
            if visited[start] {
                continue;
            }
            let mut walk = vec![start];
            visited[start] = true;
            let mut by_up = true;
            let mut cur = self.up[start].expect("middle vertex");
            while cur != start {
                walk.push(cur);
                visited[cur] = true;
                by_up = !by_up;
                cur = if by_up { self.up[cur] } else { self.down[cur] }.expect("middle vertex");
            }
            let (lr, rl) = self.count_middle(&walk, true);
            out.push(Component {
                closed: true,
                walk: walk.iter().map(|&x| self.locate(x)).collect(),
                left_to_right: lr,
                right_to_left: rl,
            });
        }
        out
    }
}

fn assemble(u: usize, w: usize, comps: &[Component]) -> StackResult {
    let mut pairs = Vec::new();
    let mut gamma = 0;
    let mut sign = 1i8;
    for c in comps {
        sign *= c.sign();
        if c.closed {
            gamma += 1;
            continue;
        }
        let conv = |(l, p): (Level, usize)| match l {
            Level::Top => Vertex::Top(p),
            Level::Bottom => Vertex::Bottom(p),
            Level::Middle => unreachable!("paths end on outer rows"),
        };
        pairs.push((conv(c.walk[0]), conv(*c.walk.last().unwrap())));
    }
    StackResult { gamma, sign, result: Diagram::new(u, w, pairs).expect("paths form a matching") }
}

/// The oriented paths and cycles of `top` stacked over `bottom`, or `None`
/// when `top.v != bottom.u`.
pub fn stack_components(top: &Diagram, bottom: &Diagram) -> Option<Vec<Component>> {
    (top.v == bottom.u).then(|| Stacked::build(top, bottom).components(false))
}

/// Places `top` over `bottom`. Returns `None` when the middle rows differ in
/// size (the product is zero); otherwise the loop count, the sign (product
/// over all paths and cycles) and the outer matching.
pub fn stack(top: &Diagram, bottom: &Diagram) -> Option<StackResult> {
    stack_components(top, bottom).map(|c| assemble(top.u, bottom.v, &c))
}

/// Same as [`stack`] but discovering components in reverse vertex order.
#[doc(hidden)]
pub fn stack_reverse_scan(top: &Diagram, bottom: &Diagram) -> Option<StackResult> {
    (top.v == bottom.u).then(|| assemble(top.u, bottom.v, &Stacked::build(top, bottom).components(true)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;
    use Vertex::{Bottom as B, Top as T};

    /// Independent count of perfect matchings of `w` points by set partition
    /// brute force (pairs chosen in any order, deduplicated).
    fn brute_force_matchings(w: usize) -> usize {
        fn go(rest: Vec<usize>, acc: Vec<(usize, usize)>, out: &mut BTreeSet<Vec<(usize, usize)>>) {
            if rest.is_empty() {
                let mut a = acc;
                a.sort();
                out.insert(a);
                return;
            }
            for i in 0..rest.len() {
                for j in 0..rest.len() {
                    if i < j {
                        let mut r = rest.clone();
                        let (a, b) = (r[i], r[j]);
                        r.remove(j);
                        r.remove(i);
                        let mut acc2 = acc.clone();
                        acc2.push((a, b));
                        go(r, acc2, out);
                    }
                }
            }
        }
        if w % 2 == 1 {
            return 0;
        }
        let mut out = BTreeSet::new();
        go((0..w).collect(), vec![], &mut out);
        out.len()
    }

    #[test]
    fn counts() {
        assert_eq!(count_diagrams(1, 2), 0);
        assert_eq!(count_diagrams(0, 0), 1);
        assert_eq!(count_diagrams(2, 2), 3);
        assert_eq!(count_diagrams(3, 3), 15);
        assert_eq!(brute_force_matchings(4), 3);
        assert_eq!(brute_force_matchings(6), 15);
        for u in 0..=6 {
            for v in 0..=6 {
                if u + v <= 12 {
                    assert_eq!(enumerate_diagrams(u, v).len() as u128, count_diagrams(u, v), "({u},{v})");
                }
            }
        }
        for w in 0..=8 {
            assert_eq!(brute_force_matchings(w) as u128, count_diagrams(w, 0));
        }
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_diagrams(0, 2), vec![Diagram::new(0, 2, [(B(1), B(2))]).unwrap()]);
        assert_eq!(enumerate_diagrams(1, 1), vec![Diagram::new(1, 1, [(T(1), B(1))]).unwrap()]);
        let two = enumerate_diagrams(2, 2);
        assert_eq!(two.len(), 3);
        assert!(two.contains(&special_c(2)));
        assert!(two.contains(&Diagram::new(2, 2, [(T(2), B(1)), (T(1), B(2))]).unwrap()));
        assert!(two.contains(&Diagram::new(2, 2, [(T(1), T(2)), (B(1), B(2))]).unwrap()));
        assert!(enumerate_diagrams(1, 2).is_empty());
        let sorted = {
            let mut s = two.clone();
            s.sort();
            s
        };
        assert_eq!(two, sorted);
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(basis(1).len(), 2);
        assert_eq!(basis(2).len(), 7);
        assert_eq!(basis(3).len(), 28);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(Diagram::new(1, 2, []).unwrap_err(), DiagramError::OddSize(3));
        assert!(matches!(Diagram::new(1, 1, [(T(1), T(1))]), Err(DiagramError::Repeated(_))));
        assert!(matches!(Diagram::new(1, 1, [(T(1), B(2))]), Err(DiagramError::BadVertex(_))));
        assert!(matches!(Diagram::new(2, 0, []), Err(DiagramError::Unmatched(_))));
        assert!(matches!(
            Diagram::new(2, 2, [(T(1), B(1)), (T(2), B(1))]),
            Err(DiagramError::Repeated(_))
        ));
    }

    #[test]
    fn orientation_is_canonical() {
        let d = Diagram::new(2, 2, [(B(2), T(1)), (B(1), T(2))]).unwrap();
        assert_eq!(d.pairs(), &[(T(1), B(2)), (T(2), B(1))]);
        let h = Diagram::new(2, 2, [(T(2), T(1)), (B(2), B(1))]).unwrap();
        assert_eq!(h.pairs(), &[(T(1), T(2)), (B(1), B(2))]);
    }

    #[test]
    fn special_elements() {
        assert_eq!(special_c(0), Diagram::empty());
        assert_eq!(special_b(0), Diagram::new(0, 2, [(B(1), B(2))]).unwrap());
        assert_eq!(special_bbar(1), Diagram::new(3, 1, [(T(1), T(2)), (T(3), B(1))]).unwrap());
        assert_eq!(special_b(1), Diagram::new(1, 3, [(B(1), B(2)), (T(1), B(3))]).unwrap());
    }

    #[test]
    fn text_form_round_trip() {
        let d = special_bbar(1);
        assert_eq!(d.to_string(), "u=3,v=1;[T1-T2,T3-B1]");
        assert_eq!("u=3,v=1;[T1-T2,T3-B1]".parse::<Diagram>().unwrap(), d);
        assert_eq!("u=3,v=1;[T3\u{2013}B1,T2\u{2013}T1]".parse::<Diagram>().unwrap(), d);
        assert_eq!(Diagram::empty().to_string(), "u=0,v=0;[]");
        assert_eq!("u=0,v=0;[]".parse::<Diagram>().unwrap(), Diagram::empty());
        assert!("u=1;[]".parse::<Diagram>().is_err());
        assert!("u=1,v=1;[X1-B1]".parse::<Diagram>().is_err());
    }

    #[test]
    fn permutations() {
        assert_eq!(embed_permutation(&Permutation::identity(2)), special_c(2));
        let swap = Permutation::from_one_based(&[2, 1]).unwrap();
        assert_eq!(embed_permutation(&swap), Diagram::new(2, 2, [(T(2), B(1)), (T(1), B(2))]).unwrap());
        assert_eq!(Permutation::all(3).len(), 6);
        assert!(Permutation::new(vec![0, 0]).is_err());
        for r in 0..=3 {
            for p in Permutation::all(r) {
                for q in Permutation::all(r) {
                    let st = stack(&embed_permutation(&p), &embed_permutation(&q)).unwrap();
                    assert_eq!(st.gamma, 0);
                    assert_eq!(st.sign, 1);
                    assert_eq!(st.result, embed_permutation(&p.compose(&q)));
                }
                assert_eq!(p.compose(&p.inverse()), Permutation::identity(r));
            }
        }
    }

    #[test]
    fn stacking_examples() {
        for r in 0..4 {
            assert_eq!(stack(&special_c(r), &special_c(r)).unwrap(), StackResult { gamma: 0, sign: 1, result: special_c(r) });
            assert_eq!(
                stack(&special_b(r), &special_bbar(r)).unwrap(),
                StackResult { gamma: 1, sign: 1, result: special_c(r) }
            );
        }
        let sigma = embed_permutation(&Permutation::from_one_based(&[2, 1]).unwrap());
        let e = Diagram::new(2, 2, [(T(1), T(2)), (B(1), B(2))]).unwrap();
        let st = stack(&sigma, &e).unwrap();
        assert_eq!(st, StackResult { gamma: 0, sign: -1, result: e.clone() });
        // the path T1 - M2 - M1 - T2 crosses the middle once from right to left
        let comps = stack_components(&sigma, &e).unwrap();
        let top_path = comps.iter().find(|c| c.walk.len() == 4).unwrap();
        assert_eq!((top_path.left_to_right, top_path.right_to_left), (0, 1));
        assert!(stack(&special_c(1), &special_c(2)).is_none());
        assert_eq!(stack(&Diagram::empty(), &Diagram::empty()).unwrap(), StackResult { gamma: 0, sign: 1, result: Diagram::empty() });
    }

    #[test]
    fn traversal_order_does_not_matter() {
        let all = basis(3);
        for a in &all {
            for b in &all {
                assert_eq!(stack(a, b), stack_reverse_scan(a, b), "{a} * {b}");
            }
        }
    }

    #[test]
    fn cycle_sign_is_orientation_free() {
        let all = basis(4);
        for a in all.iter().filter(|d| d.v() >= 2) {
            for b in all.iter().filter(|d| d.u() == a.v()) {
                for c in stack_components(a, b).unwrap().into_iter().filter(|c| c.closed) {
                    assert_eq!(component_sign(c.left_to_right, c.right_to_left), component_sign(c.right_to_left, c.left_to_right));
                    assert_eq!((c.left_to_right + c.right_to_left) % 2, 0);
                }
            }
        }
    }

    fn arb_diagram(max: usize) -> impl Strategy<Value = Diagram> {
        (0..=max, 0..=max)
            .prop_filter("even size", |(u, v)| (u + v) % 2 == 0)
            .prop_flat_map(|(u, v)| {
                let all = enumerate_diagrams(u, v);
                (0..all.len()).prop_map(move |k| all[k].clone())
            })
    }

    proptest! {
        #[test]
        fn canonical_is_idempotent(d in arb_diagram(5)) {
            prop_assert_eq!(d.canonical(), d.clone());
            prop_assert_eq!(d.canonical().canonical(), d.canonical());
            let reparsed: Diagram = d.to_string().parse().unwrap();
            prop_assert_eq!(reparsed, d);
        }

        #[test]
        fn stacking_shapes(a in arb_diagram(4), b in arb_diagram(4)) {
            match stack(&a, &b) {
                None => prop_assert_ne!(a.v(), b.u()),
                Some(st) => {
                    prop_assert_eq!(st.result.u(), a.u());
                    prop_assert_eq!(st.result.v(), b.v());
                    prop_assert!(st.sign == 1 || st.sign == -1);
                    prop_assert!(st.gamma <= a.v() / 2);
                }
            }
        }
    }
}
