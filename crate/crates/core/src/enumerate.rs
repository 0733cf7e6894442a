//! Graph walks: the genus-2 pre-enumeration, the genus-3 breadth-first
//! enumeration and the random-walk search for one hyperelliptic curve.
//!
//! The genus-3 walk processes the queue in batches. Neighbors of a batch
//! are computed in parallel, then committed sequentially in (node, coset)
//! order, so the result is identical to a sequential run for any thread
//! count or batch size.

use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{kind_of, VarietyKind};
use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};
use crate::invariants::{
    dixmier_ohno, fingerprint, igusa, shioda, InvariantFingerprint, WeightedTuple,
};
use crate::reconstruct::{
    rosenhain_g2, rosenhain_g3, weber_quartic_with, CurveModel, HyperellipticModel, QuarticModel,
};
use crate::seeds::{product_theta, supersingular_lambdas, EllipticSeed};
use crate::symplectic::{coset_reps, CosetTable};
use crate::theta::{is_even, isogeny_step_with, NullPointJson, SignPolicy, SquaredThetaNullPoint};

/// Checkpoint format version.
pub const CHECKPOINT_VERSION: u32 = 1;

/// PRNG used for every random choice, recorded in outputs.
pub const PRNG_NAME: &str = "ChaCha8Rng::seed_from_u64";

/// A genus-2 isomorphism class found by the surface walk.
#[derive(Clone, Debug)]
pub struct Genus2Class {
    pub fingerprint: InvariantFingerprint,
    pub model: HyperellipticModel,
    pub theta: SquaredThetaNullPoint,
}

fn step_and_kind(
    plan_apply: SquaredThetaNullPoint,
    policy: SignPolicy,
) -> Result<(SquaredThetaNullPoint, VarietyKind)> {
    let t = isogeny_step_with(&plan_apply, policy)?;
    let kind = kind_of(t.genus(), t.n_van())?;
    Ok((t, kind))
}

/// Breadth-first walk over principally polarized superspecial surfaces,
/// seeded with all products `E_i × E_j`. Returns one null-point per
/// genus-2 class in discovery order.
pub fn enumerate_dim2(seeds: &[EllipticSeed], table: &CosetTable) -> Result<Vec<Genus2Class>> {
    let mut queue = Vec::new();
    for i in 0..seeds.len() {
        for j in i..seeds.len() {
            queue.push(product_theta(&seeds[i].theta, &seeds[j].theta)?);
        }
    }
    let mut seen = HashSet::new();
    let mut classes = Vec::new();
    let mut k = 0;
    while k < queue.len() {
        let node = queue[k].clone();
        for plan in table.plans() {
            let (t, kind) = step_and_kind(plan.apply(&node), SignPolicy::Canonical)?;
            if kind != VarietyKind::Jacobian2 {
                continue;
            }
            let model = rosenhain_g2(&t)?;
            let fp = fingerprint(&igusa(&model)?)?;
            if seen.insert(fp.clone()) {
                classes.push(Genus2Class {
                    fingerprint: fp,
                    model,
                    theta: t.clone(),
                });
                queue.push(t);
            }
        }
        k += 1;
    }
    if classes.is_empty() {
        return Err(Error::ConnectivityViolation(
            "no genus-2 Jacobian reached".into(),
        ));
    }
    Ok(classes)
}

/// Order in which the initial seeds enter the queue.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeedOrder {
    #[default]
    Natural,
    Reversed,
}

/// Knobs of the genus-3 walk.
#[derive(Clone, Debug)]
pub struct EnumConfig {
    /// Stop once `#L1 + #L2` reaches this value.
    pub stop_at_count: Option<usize>,
    /// Checkpoint file, written every `checkpoint_every` processed nodes.
    pub checkpoint: Option<PathBuf>,
    pub checkpoint_every: usize,
    /// Nodes per parallel batch; does not affect results.
    pub batch: usize,
    /// When set, square-root signs are drawn pseudo-randomly from this seed.
    pub sign_seed: Option<u64>,
    pub seed_order: SeedOrder,
    /// Keep full invariant tuples on the records.
    pub emit_invariants: bool,
    /// Check the product relation and odd-index vanishing on every node.
    pub check_invariants: bool,
}

impl Default for EnumConfig {
    fn default() -> Self {
        Self {
            stop_at_count: None,
            checkpoint: None,
            checkpoint_every: 1000,
            batch: 64,
            sign_seed: None,
            seed_order: SeedOrder::Natural,
            emit_invariants: false,
            check_invariants: cfg!(debug_assertions),
        }
    }
}

/// One vertex of the queue `S`.
#[derive(Clone, Debug)]
pub struct Node {
    pub theta: SquaredThetaNullPoint,
    pub kind: VarietyKind,
    /// Invariant fingerprint for Jacobians, factor-identity key for products.
    pub key: String,
    pub model: Option<CurveModel>,
    /// `(parent index, coset index)`; `None` for seeds.
    pub discovery: Option<(usize, usize)>,
    pub invariants: Option<WeightedTuple>,
}

/// Serialized node.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NodeRecord {
    pub index: usize,
    pub kind: VarietyKind,
    pub n_van: usize,
    pub key: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discovery: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<serde_json::Value>,
    pub theta: NullPointJson,
}

impl Node {
    /// Record for output or checkpointing.
    pub fn record(&self, index: usize) -> NodeRecord {
        NodeRecord {
            index,
            kind: self.kind,
            n_van: self.theta.n_van(),
            key: self.key.clone(),
            model: self
                .model
                .as_ref()
                .map(|m| serde_json::to_value(m).expect("serializable")),
            discovery: self.discovery,
            invariants: self
                .invariants
                .as_ref()
                .map(|t| serde_json::to_value(t).expect("serializable")),
            theta: self.theta.to_json(true),
        }
    }

    fn from_record(field: PrimeField, r: &NodeRecord) -> Result<Self> {
        let theta = SquaredThetaNullPoint::from_json(field, &r.theta)?;
        let model = r
            .model
            .as_ref()
            .map(|m| model_from_json(field, m))
            .transpose()?;
        let invariants = r
            .invariants
            .as_ref()
            .map(|v| tuple_from_json(field, v))
            .transpose()?;
        Ok(Self {
            theta,
            kind: r.kind,
            key: r.key.clone(),
            model,
            discovery: r.discovery,
            invariants,
        })
    }
}

fn pairs_from_json(field: PrimeField, v: &serde_json::Value) -> Result<Vec<FieldElement>> {
    let arr: Vec<[i64; 2]> = serde_json::from_value(v.clone())?;
    Ok(arr.into_iter().map(|p| field.from_pair(p)).collect())
}

/// Parses a serialized [`CurveModel`].
pub fn model_from_json(field: PrimeField, v: &serde_json::Value) -> Result<CurveModel> {
    let get = |k: &str| {
        v.get(k)
            .ok_or_else(|| Error::Parse(format!("model without {k:?}")))
    };
    match v.get("type").and_then(|t| t.as_str()) {
        Some("hyperelliptic") => {
            let g = get("g")?
                .as_u64()
                .ok_or_else(|| Error::Parse("model genus".into()))? as usize;
            Ok(CurveModel::Hyperelliptic(HyperellipticModel::new(
                g,
                pairs_from_json(field, get("lambdas")?)?,
            )?))
        }
        Some("quartic") => Ok(CurveModel::Quartic(QuarticModel::new(pairs_from_json(
            field,
            get("coeffs")?,
        )?)?)),
        _ => Err(Error::Parse("unknown model type".into())),
    }
}

fn tuple_from_json(field: PrimeField, v: &serde_json::Value) -> Result<WeightedTuple> {
    let weights: Vec<u32> = serde_json::from_value(v.get("weights").cloned().unwrap_or_default())?;
    let values = pairs_from_json(field, v.get("values").unwrap_or(&serde_json::Value::Null))?;
    Ok(WeightedTuple { weights, values })
}

/// Table-shaped counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    /// Plane-quartic classes.
    pub l1: usize,
    /// Hyperelliptic genus-3 classes.
    pub l2: usize,
    /// `E × Jac(C)` seeds.
    pub l3: usize,
    /// `E × E × E` seeds.
    pub l4: usize,
    /// Length of the queue `S`.
    pub total: usize,
    /// Supersingular `j`-invariants.
    pub lambda1: usize,
    /// Genus-2 superspecial classes.
    pub lambda2: usize,
}

/// Run statistics.
#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
pub struct Stats {
    pub nodes_processed: usize,
    pub edges: usize,
    /// Nodes processed when the last new Jacobian class was found.
    pub compl: usize,
    pub seconds: f64,
}

/// Output of [`enumerate_dim3`].
#[derive(Clone, Debug)]
pub struct EnumerationResult {
    pub p: u64,
    pub counts: Counts,
    pub stats: Stats,
    /// The whole queue in discovery order.
    pub nodes: Vec<Node>,
    /// Whether the walk stopped early on `stop_at_count`.
    pub stopped_early: bool,
}

impl EnumerationResult {
    /// Indices of Jacobian nodes sorted by key, the order-normalized output.
    pub fn sorted_curves(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.nodes.len())
            .filter(|&i| self.nodes[i].kind.is_jacobian())
            .collect();
        idx.sort_by(|&a, &b| {
            (self.nodes[a].kind, &self.nodes[a].key).cmp(&(self.nodes[b].kind, &self.nodes[b].key))
        });
        idx
    }

    /// Curve models of one kind.
    pub fn models(&self, kind: VarietyKind) -> Vec<&CurveModel> {
        self.sorted_curves()
            .into_iter()
            .filter(|&i| self.nodes[i].kind == kind)
            .filter_map(|i| self.nodes[i].model.as_ref())
            .collect()
    }

    /// Keys of one kind.
    pub fn keys(&self, kind: VarietyKind) -> Vec<&str> {
        self.sorted_curves()
            .into_iter()
            .filter(|&i| self.nodes[i].kind == kind)
            .map(|i| self.nodes[i].key.as_str())
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    version: u32,
    p: u64,
    sign_seed: Option<u64>,
    seed_order: SeedOrder,
    cursor: usize,
    counts: Counts,
    stats: Stats,
    nodes: Vec<NodeRecord>,
}

impl Checkpoint {
    fn new(
        field: PrimeField,
        cfg: &EnumConfig,
        cursor: usize,
        counts: Counts,
        stats: Stats,
        nodes: &[Node],
    ) -> Self {
        Self {
            version: CHECKPOINT_VERSION,
            p: field.p(),
            sign_seed: cfg.sign_seed,
            seed_order: cfg.seed_order,
            cursor,
            counts,
            stats,
            nodes: nodes.iter().enumerate().map(|(i, n)| n.record(i)).collect(),
        }
    }
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn signs_for(seed: Option<u64>, node: usize, coset: usize) -> (SignPolicy, [bool; 3]) {
    match seed {
        None => (SignPolicy::Canonical, [false; 3]),
        Some(s) => {
            let h = splitmix(s ^ splitmix(node as u64) ^ splitmix((coset as u64) << 32));
            (
                SignPolicy::Flip(h as u8),
                [h >> 8 & 1 == 1, h >> 9 & 1 == 1, h >> 10 & 1 == 1],
            )
        }
    }
}

/// A codomain worth committing.
struct Candidate {
    coset: usize,
    node: Node,
}

/// Fingerprinted curve of a genus-3 Jacobian null-point.
pub fn classify_jacobian(
    t: &SquaredThetaNullPoint,
    kind: VarietyKind,
    weber_signs: [bool; 3],
) -> Result<(CurveModel, WeightedTuple, InvariantFingerprint)> {
    match kind {
        VarietyKind::PlaneQuartic => {
            let q = weber_quartic_with(t, weber_signs)?;
            let inv = dixmier_ohno(&q)?;
            let fp = fingerprint(&inv)?;
            Ok((CurveModel::Quartic(q), inv, fp))
        }
        VarietyKind::Hyperelliptic3 => {
            let h = rosenhain_g3(t)?;
            let inv = shioda(&h)?;
            let fp = fingerprint(&inv)?;
            Ok((CurveModel::Hyperelliptic(h), inv, fp))
        }
        other => Err(Error::WrongType(format!(
            "{other:?} is not a genus-3 Jacobian"
        ))),
    }
}

fn check_node(t: &SquaredThetaNullPoint) -> Result<()> {
    if t.values()
        .iter()
        .enumerate()
        .any(|(i, v)| !is_even(i, t.genus()) && !v.is_zero())
    {
        return Err(Error::InvariantViolation(
            "odd theta constant does not vanish".into(),
        ));
    }
    if t.product_relation_holds() == Some(false) {
        return Err(Error::InvariantViolation("product relation fails".into()));
    }
    Ok(())
}

fn neighbors(
    k: usize,
    node: &SquaredThetaNullPoint,
    table: &CosetTable,
    cfg: &EnumConfig,
) -> Result<Vec<Candidate>> {
    let mut out = Vec::new();
    for (c, plan) in table.plans().iter().enumerate() {
        let (policy, wsigns) = signs_for(cfg.sign_seed, k, c);
        let (t, kind) = step_and_kind(plan.apply(node), policy)?;
        if cfg.check_invariants {
            check_node(&t)?;
        }
        if !kind.is_jacobian() {
            continue;
        }
        let (model, inv, fp) = classify_jacobian(&t, kind, wsigns)?;
        out.push(Candidate {
            coset: c,
            node: Node {
                theta: t,
                kind,
                key: fp.hex().to_string(),
                model: Some(model),
                discovery: None,
                invariants: cfg.emit_invariants.then_some(inv),
            },
        });
    }
    Ok(out)
}

/// Initial queue: all `E_i × E_j × E_k` (`i ≤ j ≤ k`), then all `E_i × Jac(C)`.
pub fn initial_seeds(
    seeds: &[EllipticSeed],
    g2: &[Genus2Class],
    order: SeedOrder,
) -> Result<(Vec<Node>, usize, usize)> {
    let mut nodes = Vec::new();
    let n = seeds.len();
    for i in 0..n {
        for j in i..n {
            for k in j..n {
                let th = product_theta(
                    &seeds[i].theta,
                    &product_theta(&seeds[j].theta, &seeds[k].theta)?,
                )?;
                let key = format!("EEE:{}:{}:{}", seeds[i].j, seeds[j].j, seeds[k].j);
                nodes.push(Node {
                    theta: th,
                    kind: VarietyKind::EEE,
                    key,
                    model: None,
                    discovery: None,
                    invariants: None,
                });
            }
        }
    }
    let l4 = nodes.len();
    for s in seeds {
        for c in g2 {
            let th = product_theta(&s.theta, &c.theta)?;
            let key = format!("EJ:{}:{}", s.j, c.fingerprint.hex());
            nodes.push(Node {
                theta: th,
                kind: VarietyKind::EJac2,
                key,
                model: None,
                discovery: None,
                invariants: None,
            });
        }
    }
    let l3 = nodes.len() - l4;
    for n in &nodes {
        let kind = kind_of(3, n.theta.n_van())?;
        if kind != n.kind {
            return Err(Error::InvariantViolation(format!(
                "seed {} classifies as {kind:?}",
                n.key
            )));
        }
    }
    if order == SeedOrder::Reversed {
        nodes.reverse();
    }
    Ok((nodes, l3, l4))
}

fn write_checkpoint(path: &Path, ck: &Checkpoint) -> Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, serde_json::to_vec(ck)?)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Queue, cursor, counts and statistics of a partially processed walk.
type WalkState = (Vec<Node>, usize, Counts, Stats);

fn read_checkpoint(path: &Path, field: PrimeField, cfg: &EnumConfig) -> Result<Option<WalkState>> {
    if !path.exists() {
        return Ok(None);
    }
    let bytes =
        std::fs::read(path).map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?;
    let ck: Checkpoint = serde_json::from_slice(&bytes)
        .map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?;
    if ck.version != CHECKPOINT_VERSION {
        return Err(Error::Checkpoint(format!(
            "version {} (expected {CHECKPOINT_VERSION})",
            ck.version
        )));
    }
    if ck.p != field.p() || ck.sign_seed != cfg.sign_seed || ck.seed_order != cfg.seed_order {
        return Err(Error::Checkpoint(
            "checkpoint was written with a different configuration".into(),
        ));
    }
    let nodes = ck
        .nodes
        .iter()
        .map(|r| Node::from_record(field, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some((nodes, ck.cursor, ck.counts, ck.stats)))
}

/// The genus-3 breadth-first enumeration of superspecial curves.
pub fn enumerate_dim3(field: PrimeField, cfg: &EnumConfig) -> Result<EnumerationResult> {
    let start = Instant::now();
    let seeds = supersingular_lambdas(field)?;
    let g2 = enumerate_dim2(&seeds, &coset_reps(2)?)?;
    let table = coset_reps(3)?;

    let resumed = match &cfg.checkpoint {
        Some(path) => read_checkpoint(path, field, cfg)?,
        None => None,
    };
    let (mut nodes, mut cursor, mut counts, mut stats) = match resumed {
        Some(state) => {
            log::info!("resuming at node {} of {}", state.1, state.0.len());
            state
        }
        None => {
            let (nodes, l3, l4) = initial_seeds(&seeds, &g2, cfg.seed_order)?;
            let counts = Counts {
                l3,
                l4,
                total: nodes.len(),
                lambda1: seeds.len(),
                lambda2: g2.len(),
                ..Default::default()
            };
            (nodes, 0, counts, Stats::default())
        }
    };
    let elapsed_before = stats.seconds;
    let mut seen: HashSet<String> = nodes.iter().map(|n| n.key.clone()).collect();
    let target_reached = |c: &Counts| cfg.stop_at_count.is_some_and(|n| c.l1 + c.l2 >= n);
    let mut stopped_early = target_reached(&counts);
    let mut last_checkpoint = cursor;

    while cursor < nodes.len() && !stopped_early {
        let end = nodes.len().min(cursor + cfg.batch.max(1));
        let batch: Vec<Result<Vec<Candidate>>> = (cursor..end)
            .into_par_iter()
            .map(|k| neighbors(k, &nodes[k].theta, &table, cfg))
            .collect();
        for (k, cands) in (cursor..end).zip(batch) {
            let cands = cands.map_err(|e| annotate(e, k, &nodes[k]))?;
            stats.edges += table.len();
            stats.nodes_processed += 1;
            for cand in cands {
                if seen.insert(cand.node.key.clone()) {
                    let mut node = cand.node;
                    node.discovery = Some((k, cand.coset));
                    match node.kind {
                        VarietyKind::PlaneQuartic => counts.l1 += 1,
                        _ => counts.l2 += 1,
                    }
                    stats.compl = k + 1;
                    nodes.push(node);
                }
            }
            cursor = k + 1;
            if target_reached(&counts) {
                stopped_early = cursor < nodes.len();
                break;
            }
        }
        counts.total = nodes.len();
        if let Some(path) = &cfg.checkpoint {
            if cursor - last_checkpoint >= cfg.checkpoint_every || cursor >= nodes.len() {
                stats.seconds = elapsed_before + start.elapsed().as_secs_f64();
                let ck = Checkpoint::new(field, cfg, cursor, counts, stats, &nodes);
                write_checkpoint(path, &ck)?;
                last_checkpoint = cursor;
            }
        }
        log::debug!(
            "processed {cursor}/{} L1={} L2={}",
            nodes.len(),
            counts.l1,
            counts.l2
        );
    }
    if let (Some(path), true) = (&cfg.checkpoint, stopped_early) {
        stats.seconds = elapsed_before + start.elapsed().as_secs_f64();
        let ck = Checkpoint::new(field, cfg, cursor, counts, stats, &nodes);
        write_checkpoint(path, &ck)?;
    }
    if stats.edges != table.len() * stats.nodes_processed {
        return Err(Error::InvariantViolation(
            "edge count is not 135 per node".into(),
        ));
    }
    counts.total = nodes.len();
    stats.seconds = elapsed_before + start.elapsed().as_secs_f64();
    Ok(EnumerationResult {
        p: field.p(),
        counts,
        stats,
        nodes,
        stopped_early,
    })
}

fn annotate(e: Error, k: usize, node: &Node) -> Error {
    match e {
        Error::SingularOrCorrupt { .. } | Error::InvariantViolation(_) => {
            let dump = serde_json::to_string(&node.record(k)).unwrap_or_default();
            Error::InvariantViolation(format!("{e} while processing node {k}: {dump}"))
        }
        other => other,
    }
}

/// How [`find_hyperelliptic`] produced its curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum FindMethod {
    /// A known family: `"x^7-1"`, `"x^7-x"` or `"x^8-1"`.
    Family { family: String },
    /// Random walk with the given number of isogeny steps.
    Walk {
        steps: u64,
        rng_seed: u64,
        prng: String,
    },
}

/// Result of [`find_hyperelliptic`].
#[derive(Clone, Debug, Serialize)]
pub struct FoundCurve {
    pub p: u64,
    #[serde(flatten)]
    pub method: FindMethod,
    pub model: HyperellipticModel,
}

/// A primitive `n`-th root of unity in `F_{p^2}`, when `n | p^2 - 1`.
pub fn primitive_root_of_unity(f: PrimeField, n: u64) -> Option<FieldElement> {
    let q1 = f.p() * f.p() - 1;
    if !q1.is_multiple_of(n) {
        return None;
    }
    let primes: Vec<u64> = (2..=n)
        .filter(|&d| n.is_multiple_of(d) && (2..d).all(|e| d % e != 0))
        .collect();
    f.elements()
        .skip(1)
        .map(|x| x.pow(q1 / n))
        .find(|y| primes.iter().all(|&l| !y.pow(n / l).is_one()))
}

/// Curves `y^2 = x^7 - 1`, `y^2 = x^7 - x` and `y^2 = x^8 - 1`.
pub const FAMILIES: [&str; 3] = ["x^7-1", "x^7-x", "x^8-1"];

/// Rosenhain model of a member of [`FAMILIES`], when its branch points
/// are rational over `F_{p^2}`.
pub fn family_model(f: PrimeField, name: &str) -> Option<HyperellipticModel> {
    let (o, z) = (f.one(), f.zero());
    let powers = |n: u64| -> Option<Vec<(FieldElement, FieldElement)>> {
        let zeta = primitive_root_of_unity(f, n)?;
        Some((0..n).map(|k| (zeta.pow(k), o)).collect())
    };
    let pts = match name {
        "x^7-1" => {
            let mut pts = powers(7)?;
            pts.push((o, z));
            pts
        }
        "x^7-x" => {
            let mut pts = vec![(z, o)];
            pts.extend(powers(6)?);
            pts.push((o, z));
            pts
        }
        "x^8-1" => powers(8)?,
        _ => return None,
    };
    HyperellipticModel::from_branch_points(&pts).ok()
}

/// The known family guaranteed superspecial at `p`: `x^7 - 1` when
/// `p ≡ 6 (mod 7)`, else `x^7 - x` when `p ≡ 3 (mod 4)`. The `x^8 - 1`
/// criterion `p ≡ 7 (mod 8)` implies `p ≡ 3 (mod 4)` and adds no primes.
pub fn known_family(f: PrimeField) -> Option<(String, HyperellipticModel)> {
    let name = match f.p() {
        p if p % 7 == 6 => "x^7-1",
        p if p % 4 == 3 => "x^7-x",
        _ => return None,
    };
    family_model(f, name).map(|m| (name.to_string(), m))
}

/// Finds one superspecial hyperelliptic genus-3 curve: a known family when
/// `p` allows, otherwise a random walk from `E^3` until a hyperelliptic
/// Jacobian is reached. The walk is replayable from `rng_seed`.
pub fn find_hyperelliptic(
    f: PrimeField,
    rng_seed: u64,
    max_steps: u64,
    force_walk: bool,
) -> Result<FoundCurve> {
    if !force_walk {
        if let Some((family, model)) = known_family(f) {
            return Ok(FoundCurve {
                p: f.p(),
                method: FindMethod::Family { family },
                model,
            });
        }
    }
    let lambda = crate::seeds::first_supersingular_lambda(f)
        .ok_or_else(|| Error::InvalidNullPoint("no supersingular λ".into()))?;
    let e = crate::seeds::elliptic_theta(lambda)?;
    let mut cur = product_theta(&e, &product_theta(&e, &e)?)?;
    let table = coset_reps(3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    for step in 1..=max_steps {
        let c = rng.random_range(0..table.len());
        let (t, kind) = step_and_kind(table.plans()[c].apply(&cur), SignPolicy::Canonical)?;
        if kind == VarietyKind::Hyperelliptic3 {
            let model = rosenhain_g3(&t)?;
            let method = FindMethod::Walk {
                steps: step,
                rng_seed,
                prng: PRNG_NAME.into(),
            };
            return Ok(FoundCurve {
                p: f.p(),
                method,
                model,
            });
        }
        cur = t;
    }
    Err(Error::GaveUp(max_steps))
}
