//! Good involutions: verification, a brute-force oracle, and the
//! parametrized enumerator.
//!
//! A good involution of a quandle `(X, s)` is an involution `ρ` of `X` with
//! `ρ s_x = s_x ρ` and `s_{ρ(x)} = s_x⁻¹` for all `x`. It need not be a
//! quandle homomorphism.
//!
//! For a subquandle `X` of `Conj(G, φ)`, every good involution has the form
//! `ρ(x) = φ(x⁻¹)·ψ(x)` for a unique `ψ` that is constant on connected
//! components and satisfies `ψ = ψρ`, with values in the
//! [parameter set](crate::constructors::TwistedConjContext::parameter_set). [`enumerate_theorem`] walks
//! the component-level functions `ψ*: O(X) -> S` with forced propagation of
//! `ψ = ψρ`, so only consistent partial assignments are ever extended.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constructors::{alexander_context, linear_context, TwistedConjContext};
use crate::error::{Error, Result};
use crate::group::{make_unit_automorphism, FiniteGroup, GroupMap};
use crate::quandle::Quandle;

pub const DEFAULT_BRUTE_CEILING: usize = 12;
pub const DEFAULT_MAPPING_CAP: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GoodInvolution {
    pub mapping: Vec<usize>,
    /// `ψ*` as component id -> element of `S`, when produced by the
    /// parametrized search.
    pub inducing_psi: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Brute,
    Theorem,
    ClosedForm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Theorem => "theorem",
            Method::ClosedForm => "closed-form",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    /// Candidates that survived the search but failed final verification.
    pub rejected: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct GoodInvolutionSet {
    pub count: u64,
    /// Sorted by mapping; `None` in count-only mode.
    pub mappings: Option<Vec<GoodInvolution>>,
    pub method: Method,
    pub stats: SearchStats,
    /// False when the search stopped early at `stop_after`.
    pub complete: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Collect {
    Count,
    Mappings { cap: usize },
}

#[derive(Debug, Clone, Copy)]
pub struct EnumOptions {
    pub workers: usize,
    pub collect: Collect,
    pub brute_ceiling: usize,
    /// Stop once this many good involutions are found (forces one worker).
    pub stop_after: Option<u64>,
    pub deadline: Option<Instant>,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            workers: 1,
            collect: Collect::Mappings {
                cap: DEFAULT_MAPPING_CAP,
            },
            brute_ceiling: DEFAULT_BRUTE_CEILING,
            stop_after: None,
            deadline: None,
        }
    }
}

impl EnumOptions {
    pub fn count_only() -> Self {
        EnumOptions {
            collect: Collect::Count,
            ..Default::default()
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_deadline(mut self, deadline: Option<Instant>) -> Self {
        self.deadline = deadline;
        self
    }

    fn keeps_mappings(&self) -> bool {
        matches!(self.collect, Collect::Mappings { .. })
    }
}

/// Precomputed tables for checking the good-involution identities.
pub struct Checker<'q> {
    quandle: &'q Quandle,
    /// Id of the permutation `s_x` among distinct rows.
    row_class: Vec<usize>,
    /// Id of `s_x⁻¹` among distinct rows, or `usize::MAX` if no element
    /// has that row.
    inverse_class: Vec<usize>,
    /// `s_x⁻¹(y)`, row-major.
    inverse_rows: Vec<usize>,
}

impl<'q> Checker<'q> {
    pub fn new(quandle: &'q Quandle) -> Self {
        let n = quandle.order();
        let mut ids: HashMap<&[usize], usize> = HashMap::new();
        let row_class: Vec<usize> = (0..n)
            .map(|x| {
                let next = ids.len();
                *ids.entry(quandle.row(x)).or_insert(next)
            })
            .collect();
        let mut inverse_rows = vec![0; n * n];
        for x in 0..n {
            for (y, &v) in quandle.row(x).iter().enumerate() {
                inverse_rows[x * n + v] = y;
            }
        }
        let inverse_class = (0..n)
            .map(|x| {
                ids.get(&inverse_rows[x * n..(x + 1) * n])
                    .copied()
                    .unwrap_or(usize::MAX)
            })
            .collect();
        Checker {
            quandle,
            row_class,
            inverse_class,
            inverse_rows,
        }
    }

    /// Elements `y` with `s_y = s_x⁻¹`.
    #[inline]
    fn dual_partner(&self, x: usize, y: usize) -> bool {
        self.row_class[y] == self.inverse_class[x]
    }

    #[inline]
    fn inverse_act(&self, x: usize, y: usize) -> usize {
        self.inverse_rows[x * self.quandle.order() + y]
    }

    /// Full check for a table already known to have the right length and
    /// in-range entries.
    pub fn is_good(&self, rho: &[usize]) -> bool {
        let q = self.quandle;
        let n = q.order();
        if (0..n).any(|x| rho[rho[x]] != x) {
            return false;
        }
        if (0..n).any(|x| !self.dual_partner(x, rho[x])) {
            return false;
        }
        (0..n).all(|x| {
            let row = q.row(x);
            (0..n).all(|y| rho[row[y]] == row[rho[y]])
        })
    }
}

/// True iff `rho` is an involution commuting with every `s_x` and with
/// `s_{ρ(x)} = s_x⁻¹`. Non-permutations are a shape error.
pub fn verify_good_involution(quandle: &Quandle, rho: &[usize]) -> Result<bool> {
    let n = quandle.order();
    if rho.len() != n {
        return Err(Error::Shape(format!("map has {} entries, expected {n}", rho.len())));
    }
    let mut hit = vec![false; n];
    for &y in rho {
        if y >= n || std::mem::replace(&mut hit[y], true) {
            return Err(Error::Shape("map is not a permutation".into()));
        }
    }
    Ok(Checker::new(quandle).is_good(rho))
}

enum Stop {
    Budget,
    Cap(usize),
    Enough,
}

struct Control {
    found: AtomicU64,
    abort: AtomicBool,
    deadline: Option<Instant>,
    stop_after: Option<u64>,
    cap: Option<usize>,
}

impl Control {
    fn new(opts: &EnumOptions) -> Self {
        Control {
            found: AtomicU64::new(0),
            abort: AtomicBool::new(false),
            deadline: opts.deadline,
            stop_after: opts.stop_after,
            cap: match opts.collect {
                Collect::Mappings { cap } => Some(cap),
                Collect::Count => None,
            },
        }
    }

    fn tick(&self, nodes: u64) -> std::result::Result<(), Stop> {
        if self.abort.load(Ordering::Relaxed) {
            return Err(Stop::Budget);
        }
        if nodes.is_multiple_of(1024) {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    self.abort.store(true, Ordering::Relaxed);
                    return Err(Stop::Budget);
                }
            }
        }
        Ok(())
    }

    fn record_hit(&self) -> std::result::Result<(), Stop> {
        let found = self.found.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(cap) = self.cap {
            if found > cap as u64 {
                self.abort.store(true, Ordering::Relaxed);
                return Err(Stop::Cap(cap));
            }
        }
        if self.stop_after.is_some_and(|limit| found >= limit) {
            return Err(Stop::Enough);
        }
        Ok(())
    }
}

#[derive(Default)]
struct Shard {
    count: u64,
    nodes: u64,
    rejected: u64,
    mappings: Vec<GoodInvolution>,
    stop: Option<Stop>,
}

fn finish(
    shards: Vec<Shard>,
    opts: &EnumOptions,
    method: Method,
    started: Instant,
) -> Result<GoodInvolutionSet> {
    // A cap hit aborts the sibling shards, which then report a budget stop.
    if let Some(cap) = shards.iter().find_map(|s| match s.stop {
        Some(Stop::Cap(cap)) => Some(cap),
        _ => None,
    }) {
        return Err(Error::MappingCapExceeded { cap });
    }
    let mut total = Shard::default();
    let mut complete = true;
    for shard in shards {
        total.count += shard.count;
        total.nodes += shard.nodes;
        total.rejected += shard.rejected;
        total.mappings.extend(shard.mappings);
        match shard.stop {
            None => {}
            Some(Stop::Budget) => return Err(Error::BudgetExceeded { nodes: total.nodes }),
            Some(Stop::Cap(cap)) => return Err(Error::MappingCapExceeded { cap }),
            Some(Stop::Enough) => complete = false,
        }
    }
    let mappings = opts.keeps_mappings().then(|| {
        let mut m = total.mappings;
        m.sort_unstable();
        debug_assert!(m.windows(2).all(|w| w[0].mapping != w[1].mapping));
        m
    });
    if let Some(m) = &mappings {
        total.count = m.len() as u64;
    }
    Ok(GoodInvolutionSet {
        count: total.count,
        mappings,
        method,
        stats: SearchStats {
            nodes: total.nodes,
            rejected: total.rejected,
            elapsed: started.elapsed(),
        },
        complete,
    })
}

fn run_shards<T, F>(units: Vec<T>, workers: usize, f: F) -> Vec<Shard>
where
    T: Send + Sync,
    F: Fn(&T) -> Shard + Send + Sync,
{
    if workers <= 1 || units.len() <= 1 {
        let mut out = Vec::with_capacity(units.len());
        for unit in &units {
            let shard = f(unit);
            let stop = shard.stop.is_some();
            out.push(shard);
            if stop {
                break;
            }
        }
        return out;
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(|| units.par_iter().map(&f).collect()),
        Err(_) => units.iter().map(&f).collect(),
    }
}

/// Exhaustive search over involutions of the carrier, pairing each element
/// only with admissible partners (`s_y = s_x⁻¹`) and rejecting partial maps
/// that already break `ρ s_a = s_a ρ`.
pub fn enumerate_brute(quandle: &Quandle, opts: &EnumOptions) -> Result<GoodInvolutionSet> {
    let started = Instant::now();
    if quandle.order() > opts.brute_ceiling {
        return Err(Error::BruteCeiling {
            order: quandle.order(),
            ceiling: opts.brute_ceiling,
        });
    }
    let checker = Checker::new(quandle);
    let control = Control::new(opts);
    let n = quandle.order();
    // Shard on the partner of element 0.
    let roots: Vec<usize> = (0..n).filter(|&y| checker.dual_partner(0, y)).collect();
    let shards = run_shards(roots, opts.workers, |&y| {
        let mut search = BruteSearch {
            checker: &checker,
            control: &control,
            keep: opts.keeps_mappings(),
            rho: vec![usize::MAX; n],
            shard: Shard::default(),
        };
        search.shard.stop = search.root(y).err();
        search.shard
    });
    finish(shards, opts, Method::Brute, started)
}

struct BruteSearch<'a> {
    checker: &'a Checker<'a>,
    control: &'a Control,
    keep: bool,
    rho: Vec<usize>,
    shard: Shard,
}

impl BruteSearch<'_> {
    fn root(&mut self, y: usize) -> std::result::Result<(), Stop> {
        self.shard.nodes += 1;
        self.control.tick(self.shard.nodes)?;
        if self.pair(0, y) {
            self.dfs()?;
        }
        Ok(())
    }

    fn dfs(&mut self) -> std::result::Result<(), Stop> {
        let n = self.rho.len();
        let Some(x) = (0..n).find(|&x| self.rho[x] == usize::MAX) else {
            if self.checker.is_good(&self.rho) {
                self.shard.count += 1;
                if self.keep {
                    self.shard.mappings.push(GoodInvolution {
                        mapping: self.rho.clone(),
                        inducing_psi: None,
                    });
                }
                self.control.record_hit()?;
            } else {
                self.shard.rejected += 1;
            }
            return Ok(());
        };
        for y in x..n {
            if self.rho[y] != usize::MAX || !self.checker.dual_partner(x, y) {
                continue;
            }
            self.shard.nodes += 1;
            self.control.tick(self.shard.nodes)?;
            if self.pair(x, y) {
                self.dfs()?;
            }
            self.rho[x] = usize::MAX;
            self.rho[y] = usize::MAX;
        }
        Ok(())
    }

    /// Sets `ρ(x) = y`, `ρ(y) = x`; false if a commuting constraint between
    /// already-assigned elements fails.
    fn pair(&mut self, x: usize, y: usize) -> bool {
        self.rho[x] = y;
        self.rho[y] = x;
        self.consistent(x) && (x == y || self.consistent(y))
    }

    fn consistent(&self, u: usize) -> bool {
        let q = self.checker.quandle;
        let rho = &self.rho;
        (0..q.order()).all(|a| {
            let w = q.act(a, u);
            if rho[w] != usize::MAX && rho[w] != q.act(a, rho[u]) {
                return false;
            }
            let v = self.checker.inverse_act(a, u);
            rho[v] == usize::MAX || rho[u] == q.act(a, rho[v])
        })
    }
}

/// Precomputed search tables for one context.
struct TheoremTables<'c> {
    ctx: &'c TwistedConjContext,
    checker: Checker<'c>,
    n: usize,
    s_len: usize,
    /// Local index of `φ(x⁻¹)·t_j`, or `usize::MAX` if it leaves `X`.
    images: Vec<usize>,
    /// `[c * s_len + j]`: every element of component `c` has an image under `t_j`.
    admissible: Vec<bool>,
}

impl<'c> TheoremTables<'c> {
    fn new(ctx: &'c TwistedConjContext) -> Self {
        let q = ctx.quandle();
        let n = q.order();
        let s_len = ctx.parameter_set().len();
        let mut images = vec![usize::MAX; s_len * n];
        for (j, &t) in ctx.parameter_set().iter().enumerate() {
            for x in 0..n {
                if let Some(y) = ctx.position(ctx.induced_image(t, x)) {
                    images[j * n + x] = y;
                }
            }
        }
        let parts = q.components();
        let mut admissible = vec![false; parts.len() * s_len];
        for (c, block) in parts.components().iter().enumerate() {
            for j in 0..s_len {
                admissible[c * s_len + j] = block.iter().all(|&x| images[j * n + x] != usize::MAX);
            }
        }
        TheoremTables {
            ctx,
            checker: Checker::new(q),
            n,
            s_len,
            images,
            admissible,
        }
    }
}

struct TheoremSearch<'a, 'c> {
    tables: &'a TheoremTables<'c>,
    control: &'a Control,
    keep: bool,
    assign: Vec<usize>,
    trail: Vec<usize>,
    queue: Vec<usize>,
    rho: Vec<usize>,
    shard: Shard,
}

impl TheoremSearch<'_, '_> {
    fn root(&mut self, j: usize) -> std::result::Result<(), Stop> {
        self.shard.nodes += 1;
        self.control.tick(self.shard.nodes)?;
        if self.propagate(0, j) {
            self.dfs(1)?;
        }
        Ok(())
    }

    /// Assigns `ψ*(c) = t_j` and forces `ψ*` on every component reached by
    /// the induced `ρ`, since `ψ(ρ(x)) = ψ(x)`.
    fn propagate(&mut self, c: usize, j: usize) -> bool {
        let t = self.tables;
        let parts = t.ctx.quandle().components();
        self.assign[c] = j;
        self.trail.push(c);
        self.queue.clear();
        self.queue.push(c);
        while let Some(c) = self.queue.pop() {
            for &x in &parts.components()[c] {
                let y = t.images[j * t.n + x];
                let target = parts.component_of(y);
                match self.assign[target] {
                    usize::MAX => {
                        if !t.admissible[target * t.s_len + j] {
                            return false;
                        }
                        self.assign[target] = j;
                        self.trail.push(target);
                        self.queue.push(target);
                    }
                    k if k != j => return false,
                    _ => {}
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for c in self.trail.drain(mark..) {
            self.assign[c] = usize::MAX;
        }
    }

    fn dfs(&mut self, from: usize) -> std::result::Result<(), Stop> {
        let t = self.tables;
        let Some(c) = (from..self.assign.len()).find(|&c| self.assign[c] == usize::MAX) else {
            return self.leaf();
        };
        for j in 0..t.s_len {
            if !t.admissible[c * t.s_len + j] {
                continue;
            }
            self.shard.nodes += 1;
            self.control.tick(self.shard.nodes)?;
            let mark = self.trail.len();
            if self.propagate(c, j) {
                self.dfs(c + 1)?;
            }
            self.undo(mark);
        }
        Ok(())
    }

    fn leaf(&mut self) -> std::result::Result<(), Stop> {
        let t = self.tables;
        let parts = t.ctx.quandle().components();
        for x in 0..t.n {
            self.rho[x] = t.images[self.assign[parts.component_of(x)] * t.n + x];
        }
        let rho = &self.rho;
        // ρ must carry each component into a single component, and ψ must
        // be constant on ρ-orbits.
        let blocks_ok = parts.components().iter().all(|block| {
            let target = parts.component_of(rho[block[0]]);
            block.iter().all(|&x| parts.component_of(rho[x]) == target)
        });
        let psi_ok = (0..t.n).all(|x| {
            self.assign[parts.component_of(rho[x])] == self.assign[parts.component_of(x)]
        });
        if !(blocks_ok && psi_ok && t.checker.is_good(rho)) {
            self.shard.rejected += 1;
            return Ok(());
        }
        self.shard.count += 1;
        if self.keep {
            let s = t.ctx.parameter_set();
            self.shard.mappings.push(GoodInvolution {
                mapping: self.rho.clone(),
                inducing_psi: Some(self.assign.iter().map(|&j| s[j]).collect()),
            });
        }
        self.control.record_hit()
    }
}

/// Enumerates every good involution of the context's quandle through the
/// `ψ*: O(X) -> S` parametrization.
///
/// The top-level choice for the first component is sharded across
/// `opts.workers` threads; results are merged by sorting, so the output
/// does not depend on the worker count.
pub fn enumerate_theorem(
    ctx: &TwistedConjContext,
    opts: &EnumOptions,
) -> Result<GoodInvolutionSet> {
    let started = Instant::now();
    let tables = TheoremTables::new(ctx);
    let parts = ctx.quandle().components();
    let ncomp = parts.len();
    let control = Control::new(opts);
    let workers = if opts.stop_after.is_some() { 1 } else { opts.workers };

    let roots: Vec<usize> = (0..tables.s_len)
        .filter(|&j| tables.admissible[j])
        .collect();
    let shards = run_shards(roots, workers, |&j| {
        let mut search = TheoremSearch {
            tables: &tables,
            control: &control,
            keep: opts.keeps_mappings(),
            assign: vec![usize::MAX; ncomp],
            trail: Vec::with_capacity(ncomp),
            queue: Vec::with_capacity(ncomp),
            rho: vec![0; tables.n],
            shard: Shard::default(),
        };
        search.shard.stop = search.root(j).err();
        search.shard
    });
    let set = finish(shards, opts, Method::Theorem, started)?;
    if set.complete {
        check_bounds(ctx, &set)?;
    }
    Ok(set)
}

/// Upper bound `|S|^|O(X)|`, with `S` widened to the
/// [parameter set](TwistedConjContext::parameter_set) when `φ` moves `⟨X⟩`.
pub fn parametrization_bound(ctx: &TwistedConjContext) -> BigUint {
    BigUint::from(ctx.parameter_set().len()).pow(ctx.quandle().components().len() as u32)
}

fn check_bounds(ctx: &TwistedConjContext, set: &GoodInvolutionSet) -> Result<()> {
    let s = ctx.s_set().len() as u64;
    if BigUint::from(set.count) > parametrization_bound(ctx) {
        return Err(Error::Inconsistency(format!(
            "{} good involutions exceed |S|^|O| = {}",
            set.count,
            parametrization_bound(ctx)
        )));
    }
    if ctx.is_whole_group() && set.count < s {
        return Err(Error::Inconsistency(format!(
            "{} good involutions of the full quandle, fewer than |S| = {s}",
            set.count
        )));
    }
    if ctx.quandle().is_connected() && ctx.is_whole_group() && set.count != s {
        return Err(Error::Inconsistency(format!(
            "connected full quandle has {} good involutions, expected |S| = {s}",
            set.count
        )));
    }
    Ok(())
}

/// The parametrized search for an Alexander quandle, with `S` taken from
/// the fixed-point shortcut.
pub fn enumerate_alexander(
    group: Arc<FiniteGroup>,
    phi: GroupMap,
    opts: &EnumOptions,
) -> Result<GoodInvolutionSet> {
    let ctx = alexander_context(group, phi)?;
    enumerate_theorem(&ctx, opts)
}

/// [`enumerate_alexander`] for the linear quandle `Λ(n, k)`.
pub fn enumerate_linear(n: usize, k: i64, opts: &EnumOptions) -> Result<GoodInvolutionSet> {
    let phi = make_unit_automorphism(n, k)?;
    enumerate_alexander(Arc::clone(phi.domain()), phi, opts)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Auto,
    Brute,
    Theorem,
    Both,
}

impl std::str::FromStr for MethodChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(MethodChoice::Auto),
            "brute" => Ok(MethodChoice::Brute),
            "theorem" => Ok(MethodChoice::Theorem),
            "both" => Ok(MethodChoice::Both),
            other => Err(Error::Domain(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum Subject<'a> {
    Plain(&'a Quandle),
    Presented(&'a TwistedConjContext),
}

impl Subject<'_> {
    pub fn quandle(&self) -> &Quandle {
        match self {
            Subject::Plain(q) => q,
            Subject::Presented(ctx) => ctx.quandle(),
        }
    }
}

/// Results of a dispatched count; both fields are set under
/// [`MethodChoice::Both`].
#[derive(Debug, Clone)]
pub struct Dispatch {
    pub theorem: Option<GoodInvolutionSet>,
    pub brute: Option<GoodInvolutionSet>,
}

impl Dispatch {
    /// The theorem-path result when present, else the brute one.
    pub fn primary(&self) -> &GoodInvolutionSet {
        self.theorem
            .as_ref()
            .or(self.brute.as_ref())
            .expect("dispatch produced at least one result")
    }
}

/// Runs the requested method(s). `Auto` uses the parametrized search when a
/// presentation is available, else brute force. `Both` cross-checks the two
/// and fails with [`Error::Inconsistency`] if they disagree.
pub fn count_good(subject: Subject<'_>, method: MethodChoice, opts: &EnumOptions) -> Result<Dispatch> {
    let theorem = |ctx: &TwistedConjContext| enumerate_theorem(ctx, opts);
    let brute = || enumerate_brute(subject.quandle(), opts);
    match (method, subject) {
        (MethodChoice::Brute, _) | (MethodChoice::Auto, Subject::Plain(_)) => Ok(Dispatch {
            theorem: None,
            brute: Some(brute()?),
        }),
        (MethodChoice::Theorem | MethodChoice::Auto, Subject::Presented(ctx)) => Ok(Dispatch {
            theorem: Some(theorem(ctx)?),
            brute: None,
        }),
        (MethodChoice::Theorem | MethodChoice::Both, Subject::Plain(_)) => Err(Error::Domain(
            "the parametrized search needs a twisted conjugation presentation".into(),
        )),
        (MethodChoice::Both, Subject::Presented(ctx)) => {
            let t = theorem(ctx)?;
            let b = brute()?;
            let same = match (&t.mappings, &b.mappings) {
                (Some(tm), Some(bm)) => {
                    tm.len() == bm.len() && tm.iter().zip(bm).all(|(x, y)| x.mapping == y.mapping)
                }
                _ => t.count == b.count,
            };
            if !same {
                return Err(Error::Inconsistency(format!(
                    "brute force found {} good involutions, parametrized search found {}",
                    b.count, t.count
                )));
            }
            Ok(Dispatch {
                theorem: Some(t),
                brute: Some(b),
            })
        }
    }
}

/// Convenience: the generic-`S` context for `Λ(n, k)` run through
/// [`count_good`].
pub fn count_linear(n: usize, k: i64, method: MethodChoice, opts: &EnumOptions) -> Result<Dispatch> {
    let ctx = linear_context(n, k)?;
    count_good(Subject::Presented(&ctx), method, opts)
}
