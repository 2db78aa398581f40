//! Finite groups stored as explicit multiplication tables.
//!
//! Elements are dense indices `0..order`. Everything downstream (quandle
//! structures, the set `S`, good-involution search) is built from table
//! lookups on [`FiniteGroup`] and [`GroupMap`].

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Groups up to this order get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOC_LIMIT: usize = 64;

/// How hard [`FiniteGroup::from_table`] checks associativity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableCheck {
    /// Check every triple regardless of order.
    pub strict: bool,
    /// Seed for the sampled check used above [`EXHAUSTIVE_ASSOC_LIMIT`].
    pub seed: u64,
    /// Number of sampled triples.
    pub samples: usize,
}

impl Default for TableCheck {
    fn default() -> Self {
        TableCheck {
            strict: false,
            seed: 0x5eed,
            samples: 200_000,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
    label: Option<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("label", &self.label)
            .finish()
    }
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table, where
    /// `rows[g][h]` is the index of `g*h`.
    ///
    /// Validates shape, the Latin-square property, the identity, and
    /// associativity (see [`TableCheck`]).
    pub fn from_table(rows: &[Vec<usize>], check: TableCheck) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::InvalidOrder(0));
        }
        let mut mul = Vec::with_capacity(order * order);
        for (g, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::Shape(format!(
                    "row {g} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for &e in row {
                if e >= order {
                    return Err(Error::Shape(format!("entry {e} in row {g} out of range")));
                }
            }
            mul.extend_from_slice(row);
        }

        // Latin square: every row and column is a permutation.
        let mut seen = vec![usize::MAX; order];
        for g in 0..order {
            for h in 0..order {
                let e = mul[g * order + h];
                if seen[e] == g {
                    return Err(Error::NotAGroup(format!("row {g} repeats element {e}")));
                }
                seen[e] = g;
            }
        }
        let mut seen = vec![usize::MAX; order];
        for h in 0..order {
            for g in 0..order {
                let e = mul[g * order + h];
                if seen[e] == h {
                    return Err(Error::NotAGroup(format!("column {h} repeats element {e}")));
                }
                seen[e] = h;
            }
        }

        let identity = (0..order)
            .find(|&e| (0..order).all(|g| mul[e * order + g] == g && mul[g * order + e] == g))
            .ok_or_else(|| Error::NotAGroup("no two-sided identity".into()))?;

        let mut inv = vec![0; order];
        for (g, slot) in inv.iter_mut().enumerate() {
            // Latin property guarantees exactly one right inverse.
            let h = (0..order)
                .find(|&h| mul[g * order + h] == identity)
                .expect("latin square row contains the identity");
            if mul[h * order + g] != identity {
                return Err(Error::NotAGroup(format!("element {g} has no two-sided inverse")));
            }
            *slot = h;
        }

        let group = FiniteGroup {
            order,
            mul,
            identity,
            inv,
            label: None,
        };
        group.check_associative(check)?;
        Ok(group)
    }

    /// Parses the plain-text table format: optional `#` comment lines, the
    /// order on the first data line, then `order` rows of whitespace-separated
    /// 0-based indices. A leading `# label` comment becomes the group label.
    pub fn parse_table(text: &str, check: TableCheck) -> Result<Self> {
        let mut label = None;
        let mut data = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if label.is_none() && data.is_empty() {
                    label = Some(comment.trim().to_string());
                }
                continue;
            }
            data.push(line);
        }
        let (first, rest) = data
            .split_first()
            .ok_or_else(|| Error::Shape("empty table".into()))?;
        let order: usize = first
            .parse()
            .map_err(|_| Error::Shape(format!("bad order line {first:?}")))?;
        if rest.len() != order {
            return Err(Error::Shape(format!(
                "expected {order} rows, found {}",
                rest.len()
            )));
        }
        let rows = rest
            .iter()
            .enumerate()
            .map(|(i, line)| {
                line.split_whitespace()
                    .map(|tok| {
                        tok.parse::<usize>()
                            .map_err(|_| Error::Shape(format!("row {i}: bad entry {tok:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteGroup::from_table(&rows, check)?.with_label(label))
    }

    pub fn with_label(mut self, label: Option<String>) -> Self {
        self.label = label;
        self
    }

    fn check_associative(&self, check: TableCheck) -> Result<()> {
        let n = self.order;
        let bad = |a: usize, b: usize, c: usize| {
            self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
        };
        if check.strict || n <= EXHAUSTIVE_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if bad(a, b, c) {
                            return Err(Error::NotAGroup(format!(
                                "({a}*{b})*{c} != {a}*({b}*{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(check.seed);
            for _ in 0..check.samples {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if bad(a, b, c) {
                    return Err(Error::NotAGroup(format!("({a}*{b})*{c} != {a}*({b}*{c})")));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g * self.order + h]
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|g| (0..g).all(|h| self.mul(g, h) == self.mul(h, g)))
    }

    /// Rows of the multiplication table, for re-serialization.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub(crate) fn check_elements(&self, set: &[usize]) -> Result<()> {
        match set.iter().find(|&&g| g >= self.order) {
            Some(g) => Err(Error::Shape(format!(
                "element {g} out of range for group of order {}",
                self.order
            ))),
            None => Ok(()),
        }
    }
}

/// The additive group `Z/nZ` on `{0, .., n-1}`.
pub fn make_cyclic_group(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let mul = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
    let inv = (0..n).map(|a| (n - a) % n).collect();
    Ok(FiniteGroup {
        order: n,
        mul,
        identity: 0,
        inv,
        label: Some(format!("Z/{n}")),
    })
}

/// A function on the elements of a group. Only maps built through
/// [`GroupMap::automorphism`] (or derived from verified maps) are marked
/// verified.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupMap {
    domain: Arc<FiniteGroup>,
    image: Vec<usize>,
    verified: bool,
}

impl fmt::Debug for GroupMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupMap")
            .field("image", &self.image)
            .field("verified", &self.verified)
            .finish()
    }
}

impl GroupMap {
    pub fn raw(domain: Arc<FiniteGroup>, image: Vec<usize>) -> Result<Self> {
        if image.len() != domain.order() {
            return Err(Error::Shape(format!(
                "map has {} entries, group has order {}",
                image.len(),
                domain.order()
            )));
        }
        domain.check_elements(&image)?;
        Ok(GroupMap {
            domain,
            image,
            verified: false,
        })
    }

    pub fn automorphism(domain: Arc<FiniteGroup>, image: Vec<usize>) -> Result<Self> {
        if !is_automorphism(&domain, &image)? {
            return Err(Error::NotAutomorphism);
        }
        Ok(GroupMap {
            domain,
            image,
            verified: true,
        })
    }

    pub fn identity(domain: Arc<FiniteGroup>) -> Self {
        let image = domain.elements().collect();
        GroupMap {
            domain,
            image,
            verified: true,
        }
    }

    /// Inversion `g -> g^-1`; an automorphism exactly when the group is abelian.
    pub fn inversion(domain: Arc<FiniteGroup>) -> Result<Self> {
        let image = domain.elements().map(|g| domain.inv(g)).collect();
        GroupMap::automorphism(domain, image)
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.image[g]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn domain(&self) -> &Arc<FiniteGroup> {
        &self.domain
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub(crate) fn require_verified(&self) -> Result<()> {
        if self.verified {
            Ok(())
        } else {
            Err(Error::Contract("group map is not a verified automorphism".into()))
        }
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &GroupMap) -> Result<GroupMap> {
        if *self.domain != *other.domain {
            return Err(Error::Shape("composing maps on different groups".into()));
        }
        Ok(GroupMap {
            domain: Arc::clone(&self.domain),
            image: other.image.iter().map(|&g| self.image[g]).collect(),
            verified: self.verified && other.verified,
        })
    }

    pub fn square(&self) -> GroupMap {
        self.compose(self).expect("same domain")
    }

    pub fn inverse(&self) -> Result<GroupMap> {
        self.require_verified()?;
        let mut image = vec![0; self.image.len()];
        for (g, &h) in self.image.iter().enumerate() {
            image[h] = g;
        }
        Ok(GroupMap {
            domain: Arc::clone(&self.domain),
            image,
            verified: true,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(g, &h)| g == h)
    }

    /// `Fix φ` as a sorted element list.
    pub fn fixed_points(&self) -> Result<Vec<usize>> {
        self.require_verified()?;
        Ok(self
            .image
            .iter()
            .enumerate()
            .filter(|&(g, &h)| g == h)
            .map(|(g, _)| g)
            .collect())
    }
}

/// True iff `f` is a bijective homomorphism of `group` onto itself.
pub fn is_automorphism(group: &FiniteGroup, f: &[usize]) -> Result<bool> {
    let n = group.order();
    if f.len() != n {
        return Err(Error::Shape(format!(
            "map has {} entries, group has order {n}",
            f.len()
        )));
    }
    group.check_elements(f)?;
    let mut hit = vec![false; n];
    for &h in f {
        if std::mem::replace(&mut hit[h], true) {
            return Ok(false);
        }
    }
    Ok((0..n).all(|g| (0..n).all(|h| f[group.mul(g, h)] == group.mul(f[g], f[h]))))
}

/// `m -> k*m` on `Z/nZ`; requires `gcd(n, k) = 1`.
pub fn make_unit_automorphism(n: usize, k: i64) -> Result<GroupMap> {
    let group = Arc::new(make_cyclic_group(n)?);
    let unit = canonical_residue(k, n);
    if gcd(n, unit) != 1 {
        return Err(Error::NotAUnit { n, k });
    }
    let image = (0..n).map(|a| (unit * a) % n).collect();
    Ok(GroupMap {
        domain: group,
        image,
        verified: true,
    })
}

/// `k mod n` in `0..n`.
pub fn canonical_residue(k: i64, n: usize) -> usize {
    k.rem_euclid(n as i64) as usize
}

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The subgroup generated by `generators`, as a sorted element list.
pub fn subgroup_closure(group: &FiniteGroup, generators: &[usize]) -> Result<Vec<usize>> {
    group.check_elements(generators)?;
    let mut member = vec![false; group.order()];
    member[group.identity()] = true;
    let mut worklist = vec![group.identity()];
    for &g in generators {
        if !member[g] {
            member[g] = true;
            worklist.push(g);
        }
    }
    // In a finite group, closure under products with generators already
    // contains inverses; we still add them so the loop is obviously correct.
    while let Some(g) = worklist.pop() {
        let inv = group.inv(g);
        if !member[inv] {
            member[inv] = true;
            worklist.push(inv);
        }
        for &x in generators {
            for h in [group.mul(g, x), group.mul(x, g)] {
                if !member[h] {
                    member[h] = true;
                    worklist.push(h);
                }
            }
        }
    }
    Ok(collect_members(&member))
}

pub(crate) fn collect_members(member: &[bool]) -> Vec<usize> {
    member
        .iter()
        .enumerate()
        .filter_map(|(g, &m)| m.then_some(g))
        .collect()
}

/// Number of `k` in `(Z/nZ)^×` with `k^2 = 1` and `k != 1`.
pub fn count_order2_units(n: usize) -> usize {
    if n <= 2 {
        return 0;
    }
    (2..n)
        .filter(|&k| gcd(n, k) == 1 && (k * k) % n == 1)
        .count()
}
