//! Finite groups in additive notation, given by Cayley tables.
//!
//! Elements are dense indices `0..order` and `0` is always the neutral
//! element. Nothing here assumes commutativity: `a + b` and `b + a` are
//! different table lookups.

use crate::report::{ValidationReport, Violation};
use crate::Error;

/// An element of a [`FiniteGroup`], as a dense index.
pub type Elem = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    add: Vec<Elem>,
    neg: Vec<Elem>,
}

impl FiniteGroup {
    /// Builds a group from a row-major addition table and a negation table.
    ///
    /// Only dimensions and index ranges are checked here; the axioms are
    /// checked by [`validate_group`].
    pub fn from_tables(add: Vec<Vec<Elem>>, neg: Vec<Elem>) -> Result<Self, Error> {
        let order = neg.len();
        if order == 0 {
            return Err(Error::Structural("group of order 0".into()));
        }
        if add.len() != order || add.iter().any(|row| row.len() != order) {
            return Err(Error::Structural(format!(
                "addition table is not {order} x {order}"
            )));
        }
        let add: Vec<Elem> = add.into_iter().flatten().collect();
        if let Some(bad) = add.iter().chain(neg.iter()).find(|&&x| x >= order) {
            return Err(Error::Structural(format!(
                "element index {bad} out of range for order {order}"
            )));
        }
        Ok(FiniteGroup { order, add, neg })
    }

    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            add: vec![0],
            neg: vec![0],
        }
    }

    /// The cyclic group `Z/n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let add = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        let neg = (0..n).map(|x| (n - x) % n).collect();
        FiniteGroup { order: n, add, neg }
    }

    /// The group of permutations of `points` symbols. Element `0` is the
    /// identity; `a + b` means "apply `b` first, then `a`".
    pub fn symmetric(points: usize) -> Self {
        let mut perms: Vec<Vec<usize>> = vec![(0..points).collect()];
        let mut frontier = perms.clone();
        // Closure under adjacent transpositions reaches every permutation.
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for i in 0..points.saturating_sub(1) {
                    let mut q = p.clone();
                    q.swap(i, i + 1);
                    if !perms.contains(&q) {
                        perms.push(q.clone());
                        next.push(q);
                    }
                }
            }
            frontier = next;
        }
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let n = perms.len();
        let mut add = Vec::with_capacity(n * n);
        for a in &perms {
            for b in &perms {
                let ab: Vec<usize> = (0..points).map(|i| a[b[i]]).collect();
                add.push(index(&ab));
            }
        }
        let neg = perms
            .iter()
            .map(|a| {
                let mut inv = vec![0; points];
                for (i, &ai) in a.iter().enumerate() {
                    inv[ai] = i;
                }
                index(&inv)
            })
            .collect();
        FiniteGroup { order: n, add, neg }
    }

    /// Direct product; the pair `(a, b)` is encoded as `a * |right| + b`.
    pub fn product(left: &FiniteGroup, right: &FiniteGroup) -> Self {
        let (n, m) = (left.order, right.order);
        let order = n * m;
        let mut add = Vec::with_capacity(order * order);
        for x in 0..order {
            for y in 0..order {
                let a = left.add(x / m, y / m);
                let b = right.add(x % m, y % m);
                add.push(a * m + b);
            }
        }
        let neg = (0..order)
            .map(|x| left.neg(x / m) * m + right.neg(x % m))
            .collect();
        FiniteGroup { order, add, neg }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a]
    }

    /// `a - b`, i.e. `a + (-b)`.
    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// Left-to-right sum of a sequence of elements.
    pub fn sum<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items.into_iter().fold(0, |acc, x| self.add(acc, x))
    }

    /// `a + t - a`.
    pub fn conjugate(&self, a: Elem, t: Elem) -> Elem {
        self.add(self.add(a, t), self.neg(a))
    }

    /// Bounds-checked [`conjugate`](Self::conjugate).
    pub fn try_conjugate(&self, a: Elem, t: Elem) -> Result<Elem, Error> {
        for x in [a, t] {
            if x >= self.order {
                return Err(Error::Structural(format!(
                    "element {x} out of range for order {}",
                    self.order
                )));
            }
        }
        Ok(self.conjugate(a, t))
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.add(a, b) == self.add(b, a)))
    }

    pub fn add_table(&self) -> Vec<Vec<Elem>> {
        self.add.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn neg_table(&self) -> &[Elem] {
        &self.neg
    }
}

/// Checks associativity, two-sided neutrality of `0` and the negation table.
pub fn validate_group(g: &FiniteGroup) -> ValidationReport {
    let mut report = ValidationReport::new();
    for x in g.elements() {
        if g.add(x, 0) != x || g.add(0, x) != x {
            report.push(Violation::new("group-unit", format!("x={x}")));
        }
        if g.add(x, g.neg(x)) != 0 || g.add(g.neg(x), x) != 0 {
            report.push(Violation::new(
                "group-inverse",
                format!("x={x}, neg(x)={}", g.neg(x)),
            ));
        }
    }
    for x in g.elements() {
        for y in g.elements() {
            for z in g.elements() {
                if g.add(g.add(x, y), z) != g.add(x, g.add(y, z)) {
                    report.push(Violation::new(
                        "group-assoc",
                        format!("(x,y,z)=({x},{y},{z})"),
                    ));
                }
            }
        }
    }
    report.finish()
}

/// A map between the element sets of two groups, stored as a table.
///
/// The groups themselves are not owned; every check takes them explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupHom {
    map: Vec<Elem>,
}

impl GroupHom {
    pub fn new(map: Vec<Elem>) -> Self {
        GroupHom { map }
    }

    pub fn identity(order: usize) -> Self {
        GroupHom {
            map: (0..order).collect(),
        }
    }

    /// The map sending everything to `0`.
    pub fn zero(src_order: usize) -> Self {
        GroupHom {
            map: vec![0; src_order],
        }
    }

    /// The inner automorphism `t ↦ a + t - a`.
    pub fn inner(g: &FiniteGroup, a: Elem) -> Self {
        GroupHom {
            map: g.elements().map(|t| g.conjugate(a, t)).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn table(&self) -> &[Elem] {
        &self.map
    }

    pub fn src_order(&self) -> usize {
        self.map.len()
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &GroupHom) -> GroupHom {
        GroupHom {
            map: first.map.iter().map(|&x| self.map[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Option<GroupHom> {
        let mut inv = vec![usize::MAX; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            if y >= inv.len() || inv[y] != usize::MAX {
                return None;
            }
            inv[y] = x;
        }
        Some(GroupHom { map: inv })
    }

    /// Table dimensions agree with `src` and images lie in `dst`.
    pub fn is_typed(&self, src: &FiniteGroup, dst: &FiniteGroup) -> bool {
        self.map.len() == src.order() && self.map.iter().all(|&y| y < dst.order())
    }

    pub fn is_hom(&self, src: &FiniteGroup, dst: &FiniteGroup) -> bool {
        self.is_typed(src, dst)
            && self.map[0] == 0
            && src.elements().all(|x| {
                src.elements()
                    .all(|y| self.map[src.add(x, y)] == dst.add(self.map[x], self.map[y]))
            })
    }

    pub fn is_iso(&self, src: &FiniteGroup, dst: &FiniteGroup) -> bool {
        src.order() == dst.order() && self.is_hom(src, dst) && self.inverse().is_some()
    }
}

/// Reports typing and homomorphism failures of `h: src → dst`.
pub fn validate_hom(h: &GroupHom, src: &FiniteGroup, dst: &FiniteGroup) -> ValidationReport {
    let mut report = ValidationReport::new();
    if !h.is_typed(src, dst) {
        report.push(Violation::new(
            "hom-typing",
            format!(
                "table of length {} into order {}",
                h.src_order(),
                dst.order()
            ),
        ));
        return report.finish();
    }
    for x in src.elements() {
        for y in src.elements() {
            if h.apply(src.add(x, y)) != dst.add(h.apply(x), h.apply(y)) {
                report.push(Violation::new("hom-additive", format!("(x,y)=({x},{y})")));
            }
        }
    }
    report.finish()
}

/// All bijective homomorphisms `g1 → g2`, in lexicographic order of their
/// tables.
pub fn enumerate_isomorphisms(g1: &FiniteGroup, g2: &FiniteGroup) -> Vec<GroupHom> {
    let n = g1.order();
    if n != g2.order() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[0] = 0;
    used[0] = true;
    extend_iso(g1, g2, 1, &mut map, &mut used, &mut out);
    out
}

fn extend_iso(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    next: usize,
    map: &mut Vec<Elem>,
    used: &mut Vec<bool>,
    out: &mut Vec<GroupHom>,
) {
    let n = g1.order();
    if next == n {
        let h = GroupHom::new(map.clone());
        if h.is_hom(g1, g2) {
            out.push(h);
        }
        return;
    }
    for y in 0..n {
        if used[y] {
            continue;
        }
        map[next] = y;
        // Prune on every product whose operands are already placed.
        let consistent = (0..=next).all(|a| {
            (0..=next).all(|b| {
                let s = g1.add(a, b);
                s > next || map[s] == g2.add(map[a], map[b])
            })
        });
        if consistent {
            used[y] = true;
            extend_iso(g1, g2, next + 1, map, used, out);
            used[y] = false;
        }
        map[next] = usize::MAX;
    }
}
