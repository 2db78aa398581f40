//! Finite quandles as families of point symmetries.
//!
//! Convention: `act(x, y)` is `s_x(y)`, "y acted on by x", stored row-major
//! with the actor selecting the row. In the binary-operation notation this is
//! `y ▷ x`. For the linear quandle `Λ(8,5)`, `s_a(b) = 5(b - a) + a mod 8`, so
//! `act(1, 0) = 4` while `act(0, 1) = 5`.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Orbits of the carrier under the inner automorphism group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    component_of: Vec<usize>,
    components: Vec<Vec<usize>>,
}

impl ComponentPartition {
    #[inline]
    pub fn component_of(&self, x: usize) -> usize {
        self.component_of[x]
    }

    /// Blocks ordered by smallest member; each block is sorted.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.components.iter().map(Vec::len).collect()
    }
}

#[derive(Debug, Clone)]
pub struct Quandle {
    order: usize,
    sym: Vec<usize>,
    kei: OnceLock<bool>,
    components: OnceLock<ComponentPartition>,
}

impl PartialEq for Quandle {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.sym == other.sym
    }
}

impl Eq for Quandle {}

/// True iff `rows` (with `rows[x]` the permutation `s_x`) satisfies
/// `s_x(x) = x` and `s_x s_y = s_{s_x(y)} s_x` for all `x, y`.
///
/// Non-bijective rows are reported as `false`; ragged or out-of-range rows
/// are a shape error.
pub fn check_quandle_axioms(rows: &[Vec<usize>]) -> Result<bool> {
    let n = rows.len();
    let flat = flatten(rows)?;
    Ok(axioms_hold(n, &flat))
}

fn flatten(rows: &[Vec<usize>]) -> Result<Vec<usize>> {
    let n = rows.len();
    let mut flat = Vec::with_capacity(n * n);
    for (x, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Shape(format!(
                "row {x} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(bad) = row.iter().find(|&&y| y >= n) {
            return Err(Error::Shape(format!("entry {bad} in row {x} out of range")));
        }
        flat.extend_from_slice(row);
    }
    Ok(flat)
}

fn axioms_hold(n: usize, sym: &[usize]) -> bool {
    let s = |x: usize, y: usize| sym[x * n + y];
    let mut hit = vec![usize::MAX; n];
    for x in 0..n {
        for y in 0..n {
            let v = s(x, y);
            if hit[v] == x {
                return false;
            }
            hit[v] = x;
        }
        if s(x, x) != x {
            return false;
        }
    }
    for x in 0..n {
        for y in 0..n {
            let sxy = s(x, y);
            for z in 0..n {
                if s(x, s(y, z)) != s(sxy, s(x, z)) {
                    return false;
                }
            }
        }
    }
    true
}

impl Quandle {
    /// Validated constructor; `rows[x]` is the permutation `s_x`.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidOrder(0));
        }
        let flat = flatten(rows)?;
        if !axioms_hold(rows.len(), &flat) {
            return Err(Error::NotAQuandle("quandle axioms fail".into()));
        }
        Ok(Quandle::from_flat_unchecked(rows.len(), flat))
    }

    /// For constructors whose output satisfies the axioms by construction.
    pub(crate) fn from_flat_unchecked(order: usize, sym: Vec<usize>) -> Self {
        debug_assert_eq!(sym.len(), order * order);
        Quandle {
            order,
            sym,
            kei: OnceLock::new(),
            components: OnceLock::new(),
        }
    }

    /// Builds `s_x(y) = f(x, y)` without checking the axioms.
    pub(crate) fn from_fn_unchecked(order: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let sym = (0..order)
            .flat_map(|x| (0..order).map(move |y| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        Quandle::from_flat_unchecked(order, sym)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    /// `s_x(y)`.
    #[inline]
    pub fn act(&self, x: usize, y: usize) -> usize {
        self.sym[x * self.order + y]
    }

    /// The permutation `s_x`.
    #[inline]
    pub fn row(&self, x: usize) -> &[usize] {
        &self.sym[x * self.order..(x + 1) * self.order]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.sym.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn satisfies_axioms(&self) -> bool {
        axioms_hold(self.order, &self.sym)
    }

    pub fn is_kei(&self) -> bool {
        *self.kei.get_or_init(|| {
            (0..self.order).all(|x| {
                let row = self.row(x);
                (0..self.order).all(|y| row[row[y]] == y)
            })
        })
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.order).all(|x| self.row(x).iter().enumerate().all(|(y, &v)| y == v))
    }

    /// The dual quandle, with each `s_x` replaced by its inverse.
    pub fn dual(&self) -> Quandle {
        let n = self.order;
        let mut sym = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                sym[x * n + self.act(x, y)] = y;
            }
        }
        Quandle::from_flat_unchecked(n, sym)
    }

    fn check_subset(&self, subset: &[usize]) -> Result<()> {
        match subset.iter().find(|&&y| y >= self.order) {
            Some(y) => Err(Error::Shape(format!(
                "element {y} out of range for quandle of order {}",
                self.order
            ))),
            None => Ok(()),
        }
    }

    /// True iff `s_y(Y) = Y` for every `y ∈ Y`.
    pub fn is_subquandle_closed(&self, subset: &[usize]) -> Result<bool> {
        self.check_subset(subset)?;
        let mut member = vec![false; self.order];
        for &y in subset {
            member[y] = true;
        }
        let size = member.iter().filter(|&&m| m).count();
        for &y in subset {
            let row = self.row(y);
            let mut image = 0;
            for (z, &m) in member.iter().enumerate() {
                if m {
                    if !member[row[z]] {
                        return Ok(false);
                    }
                    image += 1;
                }
            }
            // s_y is injective, so an image inside Y of full size is all of Y.
            debug_assert_eq!(image, size);
        }
        Ok(true)
    }

    /// The subquandle on `subset`, re-indexed in ascending element order.
    pub fn restrict(&self, subset: &[usize]) -> Result<Quandle> {
        if !self.is_subquandle_closed(subset)? {
            return Err(Error::NotClosed(format!("{subset:?}")));
        }
        let mut elems = subset.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if elems.is_empty() {
            return Err(Error::InvalidOrder(0));
        }
        let mut position = vec![usize::MAX; self.order];
        for (i, &e) in elems.iter().enumerate() {
            position[e] = i;
        }
        Ok(Quandle::from_fn_unchecked(elems.len(), |i, j| {
            position[self.act(elems[i], elems[j])]
        }))
    }

    /// Orbits under the group generated by all `s_x`, by breadth-first
    /// saturation seeded at each unvisited element in ascending order.
    pub fn components(&self) -> &ComponentPartition {
        self.components.get_or_init(|| {
            let n = self.order;
            let mut component_of = vec![usize::MAX; n];
            let mut components = Vec::new();
            for seed in 0..n {
                if component_of[seed] != usize::MAX {
                    continue;
                }
                let id = components.len();
                component_of[seed] = id;
                let mut block = vec![seed];
                let mut head = 0;
                while head < block.len() {
                    let y = block[head];
                    head += 1;
                    for x in 0..n {
                        let z = self.act(x, y);
                        if component_of[z] == usize::MAX {
                            component_of[z] = id;
                            block.push(z);
                        }
                    }
                }
                block.sort_unstable();
                components.push(block);
            }
            ComponentPartition {
                component_of,
                components,
            }
        })
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Cycle type of `s_x` as a sorted list of cycle lengths.
    pub fn cycle_type(&self, x: usize) -> Vec<usize> {
        let row = self.row(x);
        let mut seen = vec![false; self.order];
        let mut lengths = Vec::new();
        for start in 0..self.order {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut y = start;
            while !seen[y] {
                seen[y] = true;
                y = row[y];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable();
        lengths
    }
}

/// Default node budget for [`are_isomorphic`].
pub const ISOMORPHISM_NODE_BUDGET: u64 = 5_000_000;

/// Searches for a quandle isomorphism `θ: a -> b`, returned as the image
/// table. `Ok(None)` means none exists; exceeding `node_budget` is an error.
pub fn are_isomorphic(a: &Quandle, b: &Quandle, node_budget: u64) -> Result<Option<Vec<usize>>> {
    let n = a.order();
    if n != b.order() || a.is_kei() != b.is_kei() {
        return Ok(None);
    }
    let mut sizes_a = a.components().sizes();
    let mut sizes_b = b.components().sizes();
    sizes_a.sort_unstable();
    sizes_b.sort_unstable();
    if sizes_a != sizes_b {
        return Ok(None);
    }

    let signature = |q: &Quandle, x: usize| (q.cycle_type(x), q.components().components()[q.components().component_of(x)].len());
    let sig_a: Vec<_> = (0..n).map(|x| signature(a, x)).collect();
    let sig_b: Vec<_> = (0..n).map(|x| signature(b, x)).collect();
    let mut profile_a: HashMap<_, usize> = HashMap::new();
    let mut profile_b: HashMap<_, usize> = HashMap::new();
    for s in &sig_a {
        *profile_a.entry(s).or_default() += 1;
    }
    for s in &sig_b {
        *profile_b.entry(s).or_default() += 1;
    }
    if profile_a != profile_b {
        return Ok(None);
    }

    let mut search = IsoSearch {
        a,
        b,
        candidates: (0..n)
            .map(|x| (0..n).filter(|&y| sig_a[x] == sig_b[y]).collect())
            .collect(),
        map: vec![usize::MAX; n],
        used: vec![false; n],
        assigned: Vec::with_capacity(n),
        nodes: 0,
        budget: node_budget,
    };
    if search.run()? {
        let theta = search.map;
        debug_assert!(is_isomorphism(a, b, &theta));
        Ok(Some(theta))
    } else {
        Ok(None)
    }
}

/// True iff `theta` is a bijection with `θ(s_x(y)) = s'_{θ(x)}(θ(y))`.
pub fn is_isomorphism(a: &Quandle, b: &Quandle, theta: &[usize]) -> bool {
    let n = a.order();
    if b.order() != n || theta.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &t in theta {
        if t >= n || std::mem::replace(&mut hit[t], true) {
            return false;
        }
    }
    (0..n).all(|x| (0..n).all(|y| theta[a.act(x, y)] == b.act(theta[x], theta[y])))
}

struct IsoSearch<'q> {
    a: &'q Quandle,
    b: &'q Quandle,
    candidates: Vec<Vec<usize>>,
    map: Vec<usize>,
    used: Vec<bool>,
    assigned: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl IsoSearch<'_> {
    fn run(&mut self) -> Result<bool> {
        let Some(x) = (0..self.map.len()).find(|&x| self.map[x] == usize::MAX) else {
            return Ok(true);
        };
        for i in 0..self.candidates[x].len() {
            let y = self.candidates[x][i];
            if self.used[y] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded { nodes: self.nodes });
            }
            let mark = self.assigned.len();
            if self.assign(x, y) && self.run()? {
                return Ok(true);
            }
            self.undo(mark);
        }
        Ok(false)
    }

    fn set(&mut self, x: usize, y: usize, queue: &mut Vec<usize>) -> bool {
        match self.map[x] {
            m if m == y => true,
            usize::MAX if !self.used[y] => {
                self.map[x] = y;
                self.used[y] = true;
                self.assigned.push(x);
                queue.push(x);
                true
            }
            _ => false,
        }
    }

    /// Assigns `x -> y` and closes the partial map under the operation.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        let mut queue = Vec::new();
        if !self.set(x, y, &mut queue) {
            return false;
        }
        while let Some(u) = queue.pop() {
            let tu = self.map[u];
            let mut i = 0;
            while i < self.assigned.len() {
                let v = self.assigned[i];
                let tv = self.map[v];
                if !self.set(self.a.act(u, v), self.b.act(tu, tv), &mut queue)
                    || !self.set(self.a.act(v, u), self.b.act(tv, tu), &mut queue)
                {
                    return false;
                }
                i += 1;
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for x in self.assigned.drain(mark..) {
            self.used[self.map[x]] = false;
            self.map[x] = usize::MAX;
        }
    }
}
