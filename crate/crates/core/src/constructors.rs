//! Constructors for the quandle families built from groups.
//!
//! All formulas go through the single [`FiniteGroup::mul`] table, so the
//! additive expression `φ(b - a) + a` is evaluated as `φ(b·a⁻¹)·a`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{
    collect_members, make_unit_automorphism, subgroup_closure, FiniteGroup,
    GroupMap,
};
use crate::quandle::Quandle;

pub fn trivial_quandle(n: usize) -> Result<Quandle> {
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    Ok(Quandle::from_fn_unchecked(n, |_, y| y))
}

/// `Conj G` with `s_g(h) = g h g⁻¹`.
pub fn conj_quandle(group: &FiniteGroup) -> Quandle {
    Quandle::from_fn_unchecked(group.order(), |g, h| {
        group.mul(group.mul(g, h), group.inv(g))
    })
}

/// `Alex(A, φ)` with `s_a(b) = φ(b - a) + a`.
pub fn alexander_quandle(group: &FiniteGroup, phi: &GroupMap) -> Result<Quandle> {
    phi.require_verified()?;
    check_same_group(group, phi)?;
    if !group.is_abelian() {
        return Err(Error::Domain("Alexander quandles need an abelian group".into()));
    }
    Ok(Quandle::from_fn_unchecked(group.order(), |a, b| {
        group.mul(phi.apply(group.mul(b, group.inv(a))), a)
    }))
}

/// `GAlex(G, φ)` with `s_g(h) = φ(h g⁻¹) g`.
pub fn galex_quandle(group: &FiniteGroup, phi: &GroupMap) -> Result<Quandle> {
    phi.require_verified()?;
    check_same_group(group, phi)?;
    Ok(Quandle::from_fn_unchecked(group.order(), |g, h| {
        group.mul(phi.apply(group.mul(h, group.inv(g))), g)
    }))
}

/// The linear quandle `Λ(n, k) = Alex(Z/n, m -> km)`.
pub fn linear_quandle(n: usize, k: i64) -> Result<Quandle> {
    let phi = make_unit_automorphism(n, k)?;
    alexander_quandle(&Arc::clone(phi.domain()), &phi)
}

/// The dihedral quandle `R_n`, `s_a(b) = 2a - b mod n`.
pub fn dihedral_quandle(n: usize) -> Result<Quandle> {
    linear_quandle(n, -1)
}

/// `T(A)`: the Alexander quandle of the inversion map.
pub fn takasaki_kei(group: &FiniteGroup) -> Result<Quandle> {
    if !group.is_abelian() {
        return Err(Error::Domain("Takasaki kei need an abelian group".into()));
    }
    let group = Arc::new(group.clone());
    let inversion = GroupMap::inversion(Arc::clone(&group))?;
    alexander_quandle(&group, &inversion)
}

fn check_same_group(group: &FiniteGroup, phi: &GroupMap) -> Result<()> {
    if **phi.domain() != *group {
        return Err(Error::Shape("automorphism is defined on a different group".into()));
    }
    Ok(())
}

/// Where the parameter set `S` came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SSource {
    /// Scan of `⟨X⟩` against `φ²(y) = φ(g)·y·g⁻¹` for all `y ∈ X`.
    Generic,
    /// `Fix φ` when `φ² = id`, else empty; valid for `X = A` abelian.
    FixedPointShortcut,
}

/// A subquandle `X` of `Conj(G, φ)` together with its presentation.
///
/// The quandle is indexed by position in the sorted carrier, so local index
/// `i` is the group element `carrier()[i]`.
#[derive(Debug, Clone)]
pub struct TwistedConjContext {
    ambient: Arc<FiniteGroup>,
    phi: GroupMap,
    carrier: Vec<usize>,
    position: Vec<usize>,
    generated: Vec<usize>,
    quandle: Quandle,
    s_set: Vec<usize>,
    parameters: Vec<usize>,
    s_source: SSource,
}

/// `s_g(h) = φ(g⁻¹h)·g` in `Conj(G, φ)`.
#[inline]
fn twisted_act(group: &FiniteGroup, phi: &GroupMap, g: usize, h: usize) -> usize {
    group.mul(phi.apply(group.mul(group.inv(g), h)), g)
}

/// The full twisted conjugation quandle `Conj(G, φ)`.
pub fn twisted_conj_quandle(group: Arc<FiniteGroup>, phi: GroupMap) -> Result<TwistedConjContext> {
    let all: Vec<usize> = group.elements().collect();
    twisted_conj_subquandle(group, phi, &all)
}

/// The subquandle of `Conj(G, φ)` carried by `subset`.
pub fn twisted_conj_subquandle(
    group: Arc<FiniteGroup>,
    phi: GroupMap,
    subset: &[usize],
) -> Result<TwistedConjContext> {
    phi.require_verified()?;
    check_same_group(&group, &phi)?;
    group.check_elements(subset)?;
    let mut member = vec![false; group.order()];
    for &x in subset {
        member[x] = true;
    }
    let carrier = collect_members(&member);
    if carrier.is_empty() {
        return Err(Error::InvalidOrder(0));
    }
    for &x in &carrier {
        if let Some(&y) = carrier
            .iter()
            .find(|&&y| !member[twisted_act(&group, &phi, x, y)])
        {
            return Err(Error::NotClosed(format!(
                "s_{x}({y}) = {} leaves the subset",
                twisted_act(&group, &phi, x, y)
            )));
        }
    }
    let mut position = vec![usize::MAX; group.order()];
    for (i, &x) in carrier.iter().enumerate() {
        position[x] = i;
    }
    let quandle = Quandle::from_fn_unchecked(carrier.len(), |i, j| {
        position[twisted_act(&group, &phi, carrier[i], carrier[j])]
    });
    let generated = subgroup_closure(&group, &carrier)?;
    let s_set = generic_s_set(&group, &phi, &carrier, &generated);
    // When φ does not preserve ⟨X⟩, a good involution can need a parameter
    // outside ⟨X⟩: for X = {x}, ρ = id needs t = φ(x)·x.
    let parameters = if generated.iter().all(|&g| generated.binary_search(&phi.apply(g)).is_ok()) {
        s_set.clone()
    } else {
        let all: Vec<usize> = group.elements().collect();
        generic_s_set(&group, &phi, &carrier, &all)
    };
    Ok(TwistedConjContext {
        ambient: group,
        phi,
        carrier,
        position,
        generated,
        quandle,
        s_set,
        parameters,
        s_source: SSource::Generic,
    })
}

/// `{g ∈ candidates : φ²(y) = φ(g)·y·g⁻¹ for all y ∈ X}`; `S` when the
/// candidates are `⟨X⟩`.
fn generic_s_set(
    group: &FiniteGroup,
    phi: &GroupMap,
    carrier: &[usize],
    candidates: &[usize],
) -> Vec<usize> {
    let phi2 = phi.square();
    candidates
        .iter()
        .copied()
        .filter(|&g| {
            let pg = phi.apply(g);
            let gi = group.inv(g);
            carrier
                .iter()
                .all(|&y| phi2.apply(y) == group.mul(group.mul(pg, y), gi))
        })
        .collect()
}

/// `Alex(A, φ)` as a context whose `S` is taken from the fixed-point
/// shortcut instead of the scan over `⟨X⟩`.
pub fn alexander_context(group: Arc<FiniteGroup>, phi: GroupMap) -> Result<TwistedConjContext> {
    phi.require_verified()?;
    check_same_group(&group, &phi)?;
    if !group.is_abelian() {
        return Err(Error::Domain("Alexander quandles need an abelian group".into()));
    }
    let quandle = alexander_quandle(&group, &phi)?;
    let carrier: Vec<usize> = group.elements().collect();
    let s_set = alexander_s_shortcut(&phi)?;
    Ok(TwistedConjContext {
        position: carrier.clone(),
        generated: carrier.clone(),
        carrier,
        quandle,
        parameters: s_set.clone(),
        s_set,
        s_source: SSource::FixedPointShortcut,
        ambient: group,
        phi,
    })
}

/// `Fix φ` if `φ` is an involution, otherwise empty.
pub fn alexander_s_shortcut(phi: &GroupMap) -> Result<Vec<usize>> {
    if phi.square().is_identity() {
        phi.fixed_points()
    } else {
        phi.require_verified()?;
        Ok(Vec::new())
    }
}

/// `Λ(n, k)` with its cyclic presentation and generic `S`.
pub fn linear_context(n: usize, k: i64) -> Result<TwistedConjContext> {
    let phi = make_unit_automorphism(n, k)?;
    twisted_conj_quandle(Arc::clone(phi.domain()), phi)
}

impl TwistedConjContext {
    pub fn ambient(&self) -> &Arc<FiniteGroup> {
        &self.ambient
    }

    pub fn phi(&self) -> &GroupMap {
        &self.phi
    }

    /// The carrier `X` as sorted group elements.
    pub fn carrier(&self) -> &[usize] {
        &self.carrier
    }

    /// Local index of group element `g`, if `g ∈ X`.
    #[inline]
    pub fn position(&self, g: usize) -> Option<usize> {
        match self.position[g] {
            usize::MAX => None,
            i => Some(i),
        }
    }

    /// `⟨X⟩` as sorted group elements.
    pub fn generated(&self) -> &[usize] {
        &self.generated
    }

    pub fn quandle(&self) -> &Quandle {
        &self.quandle
    }

    /// The parameter set `S` as sorted group elements.
    pub fn s_set(&self) -> &[usize] {
        &self.s_set
    }

    /// Elements `t ∈ G` with `φ²(y) = φ(t)·y·t⁻¹` for all `y ∈ X`, the
    /// values `ψ*` ranges over. Equal to `S` whenever `φ(⟨X⟩) = ⟨X⟩`,
    /// in particular for `X = G`; otherwise it may be strictly larger.
    pub fn parameter_set(&self) -> &[usize] {
        &self.parameters
    }

    pub fn s_source(&self) -> SSource {
        self.s_source
    }

    pub fn is_whole_group(&self) -> bool {
        self.carrier.len() == self.ambient.order()
    }

    pub fn contains_identity(&self) -> bool {
        self.position(self.ambient.identity()).is_some()
    }

    /// `φ(x⁻¹)·t` for a parameter `t` and local index `x`, as a group element.
    ///
    /// The parameter multiplies on the right. Writing it on the left agrees
    /// only when `t` commutes with `φ(x)`, which holds in abelian groups but
    /// fails e.g. in `S₃` with `φ` conjugation by a transposition.
    #[inline]
    pub fn induced_image(&self, t: usize, x: usize) -> usize {
        let g = &self.ambient;
        g.mul(self.phi.apply(g.inv(self.carrier[x])), t)
    }

    /// Recovers `ψ*` from a map `ρ` on local indices: `t = φ(x)·ρ(x)` must
    /// lie in [`parameter_set`](Self::parameter_set) and be constant on each
    /// component. `None` otherwise.
    pub fn inducing_psi(&self, rho: &[usize]) -> Option<Vec<usize>> {
        let g = &self.ambient;
        let parts = self.quandle.components();
        if rho.len() != self.carrier.len() {
            return None;
        }
        let mut psi = Vec::with_capacity(parts.len());
        for block in parts.components() {
            let mut t = None;
            for &x in block {
                let y = *self.carrier.get(*rho.get(x)?)?;
                let tx = g.mul(self.phi.apply(self.carrier[x]), y);
                if t.is_some_and(|t| t != tx) {
                    return None;
                }
                t = Some(tx);
            }
            let t = t?;
            self.parameters.binary_search(&t).ok()?;
            psi.push(t);
        }
        Some(psi)
    }
}
