//! Core directed weighted graph model.
//!
//! Actors are people (bishops, in the motivating datasets); a tie `A -> B`
//! means "A served under B" and carries a weight of 1, 2, or 3 depending on
//! the seniority of the role. Where the same ordered pair is recorded at
//! several levels, the tie keeps the highest level. Networks are built
//! through [`NetworkBuilder`] and become immutable once sealed.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised by graph construction and queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid actor id {id:?}: {reason}")]
    InvalidActorId { id: String, reason: &'static str },
    #[error("duplicate actor {0}")]
    DuplicateActor(ActorId),
    #[error("network is sealed; no further mutation is allowed")]
    SealedNetwork,
    #[error("unknown actor {0}")]
    UnknownActor(ActorId),
    #[error("self-loop on {0}: an actor cannot serve under itself")]
    SelfLoop(ActorId),
    #[error("expected two distinct actors, got {0} twice")]
    SameActor(ActorId),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

/// Stable identifier for an actor: a non-empty slug, unique within a network.
///
/// Hand-compiled datasets use lowercased surnames plus a disambiguator
/// ("smith", "smith-2"). Ids may not contain whitespace, commas, or double
/// quotes so that every on-disk format can carry them verbatim.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ActorId(String);

impl ActorId {
    pub fn new(id: impl Into<String>) -> Result<Self, GraphError> {
        let id = id.into();
        Self::check(&id)?;
        Ok(Self(id))
    }

    fn check(id: &str) -> Result<(), GraphError> {
        if id.is_empty() {
            return Err(GraphError::InvalidActorId {
                id: id.to_string(),
                reason: "empty id",
            });
        }
        if id
            .chars()
            .any(|c| c.is_whitespace() || c.is_control() || c == ',' || c == '"')
        {
            return Err(GraphError::InvalidActorId {
                id: id.to_string(),
                reason: "ids may not contain whitespace, commas, or quotes",
            });
        }
        Ok(())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ActorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for ActorId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Rank of an actor, frozen to the nine episcopal categories observed in
/// conference samples plus `Other` for non-episcopal actors in generic data.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rank {
    CardinalArchbishop,
    CardinalArchbishopEmeritus,
    Archbishop,
    ArchbishopEmeritus,
    Bishop,
    BishopEmeritus,
    Auxiliary,
    AuxiliaryEmeritus,
    Coadjutor,
    Other,
}

impl Rank {
    pub const ALL: [Rank; 10] = [
        Rank::CardinalArchbishop,
        Rank::CardinalArchbishopEmeritus,
        Rank::Archbishop,
        Rank::ArchbishopEmeritus,
        Rank::Bishop,
        Rank::BishopEmeritus,
        Rank::Auxiliary,
        Rank::AuxiliaryEmeritus,
        Rank::Coadjutor,
        Rank::Other,
    ];

    /// Canonical machine token, used in CSV and JSON.
    pub fn token(self) -> &'static str {
        match self {
            Rank::CardinalArchbishop => "cardinal_archbishop",
            Rank::CardinalArchbishopEmeritus => "cardinal_archbishop_emeritus",
            Rank::Archbishop => "archbishop",
            Rank::ArchbishopEmeritus => "archbishop_emeritus",
            Rank::Bishop => "bishop",
            Rank::BishopEmeritus => "bishop_emeritus",
            Rank::Auxiliary => "auxiliary",
            Rank::AuxiliaryEmeritus => "auxiliary_emeritus",
            Rank::Coadjutor => "coadjutor",
            Rank::Other => "other",
        }
    }

    /// Human-readable label, matching conference-table usage.
    pub fn label(self) -> &'static str {
        match self {
            Rank::CardinalArchbishop => "Cardinal-Archbishop",
            Rank::CardinalArchbishopEmeritus => "Cardinal-Archbishop Emeritus",
            Rank::Archbishop => "Archbishop",
            Rank::ArchbishopEmeritus => "Archbishop Emeritus",
            Rank::Bishop => "Bishop",
            Rank::BishopEmeritus => "Bishop Emeritus",
            Rank::Auxiliary => "Auxiliary Bishop",
            Rank::AuxiliaryEmeritus => "Auxiliary Bishop Emeritus",
            Rank::Coadjutor => "Coadjutor Bishop",
            Rank::Other => "Other",
        }
    }

    /// Parse either the machine token or the human label. Unknown strings are
    /// an error for callers, never silently mapped.
    pub fn parse(s: &str) -> Option<Rank> {
        let s = s.trim();
        Rank::ALL
            .iter()
            .copied()
            .find(|r| r.token().eq_ignore_ascii_case(s) || r.label().eq_ignore_ascii_case(s))
    }
}

/// Whether an actor currently holds office or has retired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Active,
    Retired,
}

impl Status {
    pub fn token(self) -> &'static str {
        match self {
            Status::Active => "active",
            Status::Retired => "retired",
        }
    }

    pub fn parse(s: &str) -> Option<Status> {
        match s.trim().to_ascii_lowercase().as_str() {
            "active" => Some(Status::Active),
            "retired" => Some(Status::Retired),
            _ => None,
        }
    }
}

/// Tie weight: the three-level coding of how senior a service role was.
///
/// Coadjutor appointments are coded at the same level as auxiliaries, so a
/// level 4 is never stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TieWeight {
    /// Served as an ordinary priest of the diocese.
    PriestService,
    /// Held a high-trust senior diocesan role (vicar general, chancellor,
    /// seminary rector, private secretary).
    SeniorRole,
    /// Served as auxiliary or coadjutor bishop.
    AuxiliaryBishop,
}

impl TieWeight {
    pub const ALL: [TieWeight; 3] = [
        TieWeight::PriestService,
        TieWeight::SeniorRole,
        TieWeight::AuxiliaryBishop,
    ];

    pub fn level(self) -> u8 {
        match self {
            TieWeight::PriestService => 1,
            TieWeight::SeniorRole => 2,
            TieWeight::AuxiliaryBishop => 3,
        }
    }

    pub fn from_level(level: u8) -> Option<TieWeight> {
        match level {
            1 => Some(TieWeight::PriestService),
            2 => Some(TieWeight::SeniorRole),
            3 => Some(TieWeight::AuxiliaryBishop),
            _ => None,
        }
    }
}

impl fmt::Display for TieWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.level())
    }
}

impl Serialize for TieWeight {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.level())
    }
}

impl<'de> Deserialize<'de> for TieWeight {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let level = u8::deserialize(deserializer)?;
        TieWeight::from_level(level)
            .ok_or_else(|| serde::de::Error::custom(format!("tie weight {level} not in 1..=3")))
    }
}

/// A node: one person, with the attributes carried by the datasets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Actor {
    pub id: ActorId,
    pub display_name: String,
    pub rank: Rank,
    pub status: Status,
    #[serde(default)]
    pub diocese: Option<String>,
    #[serde(default)]
    pub birth_year: Option<i32>,
    /// Year of episcopal ordination.
    #[serde(default)]
    pub ordination_year: Option<i32>,
}

impl Actor {
    pub fn new(id: ActorId, display_name: impl Into<String>, rank: Rank, status: Status) -> Self {
        Actor {
            id,
            display_name: display_name.into(),
            rank,
            status,
            diocese: None,
            birth_year: None,
            ordination_year: None,
        }
    }

    fn validate(&self) -> Result<(), GraphError> {
        ActorId::check(self.id.as_str())?;
        if let (Some(birth), Some(ordination)) = (self.birth_year, self.ordination_year) {
            // Nobody is ordained bishop below canonical age.
            if ordination < birth + 25 {
                return Err(GraphError::InvariantViolation(format!(
                    "actor {}: ordination year {} is before birth year {} + 25",
                    self.id, ordination, birth
                )));
            }
        }
        Ok(())
    }
}

/// A directed edge: `from` served under `to`, at the given weight.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tie {
    pub from: ActorId,
    pub to: ActorId,
    pub weight: TieWeight,
}

/// What [`NetworkBuilder::add_tie`] did with the submitted record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MergeOutcome {
    /// No tie existed for the ordered pair; one was created.
    Inserted,
    /// A tie existed at a lower level and was raised to the new level.
    Upgraded,
    /// A tie existed at an equal or higher level; the submission was a no-op.
    KeptExisting,
}

/// Direction selector for neighbor queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Sources of ties pointing at the actor (people who served under them).
    In,
    /// Targets of ties leaving the actor (people they served under).
    Out,
    /// Distinct neighbors in either direction.
    Both,
}

/// Analysis-time node filter. The graph model keeps every recorded actor;
/// analyses narrow the view instead (for example to active bishops only, or
/// to the living subset of a matrix that also lists the deceased).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum IncludeFilter {
    #[default]
    All,
    ActiveOnly,
    /// Explicit subset; ids absent from the network are ignored.
    Subset(BTreeSet<ActorId>),
}

impl IncludeFilter {
    pub fn includes(&self, actor: &Actor) -> bool {
        match self {
            IncludeFilter::All => true,
            IncludeFilter::ActiveOnly => actor.status == Status::Active,
            IncludeFilter::Subset(ids) => ids.contains(&actor.id),
        }
    }
}

type AdjMap = BTreeMap<ActorId, BTreeMap<ActorId, TieWeight>>;

#[derive(Debug, Default)]
struct BuilderState {
    actors: BTreeMap<ActorId, Actor>,
    insertion_order: Vec<ActorId>,
    out_adj: AdjMap,
    raw_ties: Vec<Tie>,
    metadata: BTreeMap<String, String>,
}

/// Mutable network under construction. `seal` validates every invariant and
/// produces the immutable [`PatronageNetwork`]; after that the builder is
/// spent and all further calls fail with [`GraphError::SealedNetwork`].
#[derive(Debug, Default)]
pub struct NetworkBuilder {
    state: Option<BuilderState>,
}

impl NetworkBuilder {
    pub fn new() -> Self {
        NetworkBuilder {
            state: Some(BuilderState::default()),
        }
    }

    fn state_mut(&mut self) -> Result<&mut BuilderState, GraphError> {
        self.state.as_mut().ok_or(GraphError::SealedNetwork)
    }

    pub fn set_metadata(
        &mut self,
        key: impl Into<String>,
        value: impl Into<String>,
    ) -> Result<(), GraphError> {
        let state = self.state_mut()?;
        state.metadata.insert(key.into(), value.into());
        Ok(())
    }

    pub fn contains_actor(&self, id: &ActorId) -> bool {
        self.state
            .as_ref()
            .is_some_and(|s| s.actors.contains_key(id))
    }

    pub fn actor_count(&self) -> usize {
        self.state.as_ref().map_or(0, |s| s.actors.len())
    }

    pub fn add_actor(&mut self, actor: Actor) -> Result<ActorId, GraphError> {
        let state = self.state_mut()?;
        actor.validate()?;
        if state.actors.contains_key(&actor.id) {
            return Err(GraphError::DuplicateActor(actor.id));
        }
        let id = actor.id.clone();
        state.insertion_order.push(id.clone());
        state.actors.insert(id.clone(), actor);
        Ok(id)
    }

    /// Record that `from` served under `to`. Repeated records for the same
    /// ordered pair keep the highest level seen.
    pub fn add_tie(
        &mut self,
        from: &ActorId,
        to: &ActorId,
        weight: TieWeight,
    ) -> Result<MergeOutcome, GraphError> {
        let state = self.state_mut()?;
        if !state.actors.contains_key(from) {
            return Err(GraphError::UnknownActor(from.clone()));
        }
        if !state.actors.contains_key(to) {
            return Err(GraphError::UnknownActor(to.clone()));
        }
        if from == to {
            return Err(GraphError::SelfLoop(from.clone()));
        }
        let slot = state.out_adj.entry(from.clone()).or_default();
        match slot.get_mut(to) {
            None => {
                slot.insert(to.clone(), weight);
                Ok(MergeOutcome::Inserted)
            }
            Some(existing) if weight > *existing => {
                *existing = weight;
                Ok(MergeOutcome::Upgraded)
            }
            Some(_) => Ok(MergeOutcome::KeptExisting),
        }
    }

    /// Stage a tie without endpoint or uniqueness checks; everything is
    /// re-validated at seal time. Raw imports (e.g. graph JSON) use this so
    /// that a corrupt file surfaces as an `InvariantViolation` from `seal`
    /// rather than being silently repaired.
    pub fn add_tie_unchecked(&mut self, tie: Tie) -> Result<(), GraphError> {
        let state = self.state_mut()?;
        state.raw_ties.push(tie);
        Ok(())
    }

    /// Validate every invariant and freeze the network.
    pub fn seal(&mut self) -> Result<PatronageNetwork, GraphError> {
        let state = self.state.take().ok_or(GraphError::SealedNetwork)?;
        let BuilderState {
            actors,
            insertion_order,
            mut out_adj,
            raw_ties,
            metadata,
        } = state;

        for actor in actors.values() {
            actor.validate()?;
        }
        for tie in raw_ties {
            if !actors.contains_key(&tie.from) {
                return Err(GraphError::InvariantViolation(format!(
                    "tie {} -> {} references unknown actor {}",
                    tie.from, tie.to, tie.from
                )));
            }
            if !actors.contains_key(&tie.to) {
                return Err(GraphError::InvariantViolation(format!(
                    "tie {} -> {} references unknown actor {}",
                    tie.from, tie.to, tie.to
                )));
            }
            if tie.from == tie.to {
                return Err(GraphError::InvariantViolation(format!(
                    "self-loop on {}",
                    tie.from
                )));
            }
            let slot = out_adj.entry(tie.from.clone()).or_default();
            if slot.contains_key(&tie.to) {
                return Err(GraphError::InvariantViolation(format!(
                    "duplicate tie {} -> {}",
                    tie.from, tie.to
                )));
            }
            slot.insert(tie.to.clone(), tie.weight);
        }

        // The checked path guarantees these already; re-assert for belt and
        // braces since out_adj also absorbed the raw ties.
        let mut in_adj: AdjMap = BTreeMap::new();
        let mut tie_count = 0usize;
        for (from, outs) in &out_adj {
            if !actors.contains_key(from) {
                return Err(GraphError::InvariantViolation(format!(
                    "tie source {from} is not an actor"
                )));
            }
            for (to, weight) in outs {
                if !actors.contains_key(to) {
                    return Err(GraphError::InvariantViolation(format!(
                        "tie target {to} is not an actor"
                    )));
                }
                if from == to {
                    return Err(GraphError::InvariantViolation(format!("self-loop on {from}")));
                }
                in_adj
                    .entry(to.clone())
                    .or_default()
                    .insert(from.clone(), *weight);
                tie_count += 1;
            }
        }

        Ok(PatronageNetwork {
            actors,
            insertion_order,
            out_adj,
            in_adj,
            tie_count,
            metadata,
        })
    }
}

/// Immutable directed weighted network of actors and ties. Safe to share
/// across threads; every analysis consumes it read-only.
#[derive(Debug, Clone)]
pub struct PatronageNetwork {
    actors: BTreeMap<ActorId, Actor>,
    insertion_order: Vec<ActorId>,
    out_adj: AdjMap,
    in_adj: AdjMap,
    tie_count: usize,
    metadata: BTreeMap<String, String>,
}

impl PatronageNetwork {
    pub fn actor_count(&self) -> usize {
        self.actors.len()
    }

    pub fn tie_count(&self) -> usize {
        self.tie_count
    }

    pub fn contains(&self, id: &ActorId) -> bool {
        self.actors.contains_key(id)
    }

    pub fn actor(&self, id: &ActorId) -> Option<&Actor> {
        self.actors.get(id)
    }

    /// Actors in id-sorted order.
    pub fn actors(&self) -> impl Iterator<Item = &Actor> {
        self.actors.values()
    }

    /// Actor ids in id-sorted order.
    pub fn actor_ids(&self) -> impl Iterator<Item = &ActorId> {
        self.actors.keys()
    }

    /// Ids in the order the actors were added to the builder. Seed-shuffled
    /// sweeps key on this order so that relabeling ids cannot change results.
    pub fn insertion_order(&self) -> &[ActorId] {
        &self.insertion_order
    }

    pub fn metadata(&self) -> &BTreeMap<String, String> {
        &self.metadata
    }

    /// All ties, sorted by (from, to).
    pub fn ties(&self) -> impl Iterator<Item = Tie> + '_ {
        self.out_adj.iter().flat_map(|(from, outs)| {
            outs.iter().map(move |(to, weight)| Tie {
                from: from.clone(),
                to: to.clone(),
                weight: *weight,
            })
        })
    }

    pub fn tie_weight(&self, from: &ActorId, to: &ActorId) -> Option<TieWeight> {
        self.out_adj.get(from)?.get(to).copied()
    }

    /// Ties leaving `id`: (target, weight), sorted by target.
    pub fn out_ties(&self, id: &ActorId) -> impl Iterator<Item = (&ActorId, TieWeight)> {
        self.out_adj
            .get(id)
            .into_iter()
            .flat_map(|m| m.iter().map(|(to, w)| (to, *w)))
    }

    /// Ties entering `id`: (source, weight), sorted by source.
    pub fn in_ties(&self, id: &ActorId) -> impl Iterator<Item = (&ActorId, TieWeight)> {
        self.in_adj
            .get(id)
            .into_iter()
            .flat_map(|m| m.iter().map(|(from, w)| (from, *w)))
    }

    /// Distinct neighbors of an actor in the requested direction. `Both` is
    /// the set union, so a reciprocated pair counts once.
    pub fn neighbors(
        &self,
        id: &ActorId,
        direction: Direction,
    ) -> Result<BTreeSet<ActorId>, GraphError> {
        if !self.contains(id) {
            return Err(GraphError::UnknownActor(id.clone()));
        }
        let mut out = BTreeSet::new();
        if matches!(direction, Direction::In | Direction::Both) {
            out.extend(self.in_ties(id).map(|(from, _)| from.clone()));
        }
        if matches!(direction, Direction::Out | Direction::Both) {
            out.extend(self.out_ties(id).map(|(to, _)| to.clone()));
        }
        Ok(out)
    }

    /// Same actor ids, same ties, same weights; attributes and metadata are
    /// not compared. This is the equality notion for topology round-trips.
    pub fn graph_eq(&self, other: &PatronageNetwork) -> bool {
        self.actors.keys().eq(other.actors.keys()) && self.out_adj == other.out_adj
    }

    /// Undirected index view of the included subgraph. See [`UndirectedView`].
    pub fn undirected_view(&self, filter: &IncludeFilter) -> UndirectedView {
        let mut ids = Vec::new();
        let mut index = BTreeMap::new();
        for id in &self.insertion_order {
            let actor = &self.actors[id];
            if filter.includes(actor) {
                index.insert(id.clone(), ids.len());
                ids.push(id.clone());
            }
        }

        // Collapse reciprocated directed pairs into one undirected edge at
        // the higher of the two levels.
        let mut edges: BTreeMap<(usize, usize), u8> = BTreeMap::new();
        for (from, outs) in &self.out_adj {
            let Some(&u) = index.get(from) else { continue };
            for (to, weight) in outs {
                let Some(&v) = index.get(to) else { continue };
                let key = (u.min(v), u.max(v));
                let level = weight.level();
                let slot = edges.entry(key).or_insert(level);
                *slot = (*slot).max(level);
            }
        }

        let mut adj: Vec<Vec<(usize, u8)>> = vec![Vec::new(); ids.len()];
        let mut weight_total = 0u64;
        for (&(u, v), &level) in &edges {
            adj[u].push((v, level));
            adj[v].push((u, level));
            weight_total += u64::from(level);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }

        UndirectedView {
            ids,
            index,
            adj,
            edge_count: edges.len(),
            weight_total,
        }
    }
}

impl PartialEq for PatronageNetwork {
    /// Semantic equality: actors with attributes, ties, metadata. Insertion
    /// order is presentation state and deliberately ignored.
    fn eq(&self, other: &Self) -> bool {
        self.actors == other.actors
            && self.out_adj == other.out_adj
            && self.metadata == other.metadata
    }
}

impl Eq for PatronageNetwork {}

/// Index-based undirected projection of a sealed network, shared by the
/// component, k-core, community, ego, and layout computations.
///
/// Nodes are numbered by network insertion order restricted to the filter;
/// each undirected edge appears in both adjacency lists with the collapsed
/// weight level (max over the two directions).
#[derive(Debug, Clone)]
pub struct UndirectedView {
    pub ids: Vec<ActorId>,
    pub index: BTreeMap<ActorId, usize>,
    pub adj: Vec<Vec<(usize, u8)>>,
    /// Number of undirected (collapsed) edges.
    pub edge_count: usize,
    /// Sum of collapsed edge levels.
    pub weight_total: u64,
}

impl UndirectedView {
    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    /// Undirected edges, each once, as (u, v, level) with u < v.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u8)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter_map(move |&(v, w)| (u < v).then_some((u, v, w))))
    }

    /// Hop distances from `source` to every node; `None` when unreachable.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.node_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued nodes have distances");
            for &(v, _) in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aid(s: &str) -> ActorId {
        ActorId::new(s).unwrap()
    }

    fn actor(s: &str) -> Actor {
        Actor::new(aid(s), s.to_uppercase(), Rank::Bishop, Status::Active)
    }

    #[test]
    fn add_actor_inserts_and_rejects_duplicates() {
        let mut b = NetworkBuilder::new();
        let id = b
            .add_actor(Actor::new(
                aid("nichols"),
                "Nichols",
                Rank::CardinalArchbishop,
                Status::Active,
            ))
            .unwrap();
        assert_eq!(id, aid("nichols"));
        assert_eq!(b.actor_count(), 1);
        let err = b.add_actor(actor("nichols")).unwrap_err();
        assert_eq!(err, GraphError::DuplicateActor(aid("nichols")));
    }

    #[test]
    fn actor_count_scales_to_conference_size() {
        let mut b = NetworkBuilder::new();
        for i in 0..424 {
            b.add_actor(actor(&format!("bp{i:03}"))).unwrap();
        }
        assert_eq!(b.actor_count(), 424);
        let net = b.seal().unwrap();
        assert_eq!(net.actor_count(), 424);
    }

    #[test]
    fn tie_merge_keeps_highest_level() {
        let mut b = NetworkBuilder::new();
        b.add_actor(actor("a")).unwrap();
        b.add_actor(actor("b")).unwrap();
        let o1 = b
            .add_tie(&aid("a"), &aid("b"), TieWeight::PriestService)
            .unwrap();
        let o2 = b.add_tie(&aid("a"), &aid("b"), TieWeight::SeniorRole).unwrap();
        assert_eq!(o1, MergeOutcome::Inserted);
        assert_eq!(o2, MergeOutcome::Upgraded);
        let net = b.seal().unwrap();
        assert_eq!(net.tie_count(), 1);
        assert_eq!(
            net.tie_weight(&aid("a"), &aid("b")),
            Some(TieWeight::SeniorRole)
        );
    }

    #[test]
    fn tie_merge_ignores_lower_level() {
        let mut b = NetworkBuilder::new();
        b.add_actor(actor("a")).unwrap();
        b.add_actor(actor("b")).unwrap();
        b.add_tie(&aid("a"), &aid("b"), TieWeight::AuxiliaryBishop)
            .unwrap();
        let o = b
            .add_tie(&aid("a"), &aid("b"), TieWeight::PriestService)
            .unwrap();
        assert_eq!(o, MergeOutcome::KeptExisting);
        let net = b.seal().unwrap();
        assert_eq!(
            net.tie_weight(&aid("a"), &aid("b")),
            Some(TieWeight::AuxiliaryBishop)
        );
    }

    #[test]
    fn self_loop_rejected() {
        let mut b = NetworkBuilder::new();
        b.add_actor(actor("a")).unwrap();
        let err = b
            .add_tie(&aid("a"), &aid("a"), TieWeight::PriestService)
            .unwrap_err();
        assert_eq!(err, GraphError::SelfLoop(aid("a")));
    }

    #[test]
    fn tie_to_unknown_actor_rejected() {
        let mut b = NetworkBuilder::new();
        b.add_actor(actor("a")).unwrap();
        let err = b
            .add_tie(&aid("a"), &aid("ghost"), TieWeight::PriestService)
            .unwrap_err();
        assert_eq!(err, GraphError::UnknownActor(aid("ghost")));
    }

    #[test]
    fn seal_empty_network() {
        let net = NetworkBuilder::new().seal().unwrap();
        assert_eq!(net.actor_count(), 0);
        assert_eq!(net.tie_count(), 0);
    }

    #[test]
    fn seal_preserves_counts() {
        let mut b = NetworkBuilder::new();
        for s in ["a", "b", "c"] {
            b.add_actor(actor(s)).unwrap();
        }
        b.add_tie(&aid("a"), &aid("b"), TieWeight::PriestService)
            .unwrap();
        b.add_tie(&aid("c"), &aid("b"), TieWeight::AuxiliaryBishop)
            .unwrap();
        let net = b.seal().unwrap();
        assert_eq!(net.actor_count(), 3);
        assert_eq!(net.tie_count(), 2);
    }

    #[test]
    fn seal_rejects_dangling_raw_tie() {
        let mut b = NetworkBuilder::new();
        b.add_actor(actor("a")).unwrap();
        b.add_tie_unchecked(Tie {
            from: aid("a"),
            to: aid("ghost"),
            weight: TieWeight::PriestService,
        })
        .unwrap();
        let err = b.seal().unwrap_err();
        assert!(matches!(err, GraphError::InvariantViolation(_)), "{err}");
    }

    #[test]
    fn builder_is_spent_after_seal() {
        let mut b = NetworkBuilder::new();
        b.seal().unwrap();
        assert_eq!(b.add_actor(actor("a")).unwrap_err(), GraphError::SealedNetwork);
        assert_eq!(b.seal().unwrap_err(), GraphError::SealedNetwork);
    }

    #[test]
    fn neighbors_by_direction() {
        let mut b = NetworkBuilder::new();
        for s in ["a", "b", "c"] {
            b.add_actor(actor(s)).unwrap();
        }
        b.add_tie(&aid("a"), &aid("b"), TieWeight::PriestService)
            .unwrap();
        b.add_tie(&aid("c"), &aid("b"), TieWeight::SeniorRole).unwrap();
        let net = b.seal().unwrap();
        assert_eq!(
            net.neighbors(&aid("b"), Direction::In).unwrap(),
            BTreeSet::from([aid("a"), aid("c")])
        );
        assert!(net.neighbors(&aid("b"), Direction::Out).unwrap().is_empty());
        assert_eq!(
            net.neighbors(&aid("ghost"), Direction::Both).unwrap_err(),
            GraphError::UnknownActor(aid("ghost"))
        );
    }

    #[test]
    fn reciprocated_pair_counts_once_in_both() {
        // Two service spells in different eras produce a 2-cycle.
        let mut b = NetworkBuilder::new();
        b.add_actor(actor("a")).unwrap();
        b.add_actor(actor("b")).unwrap();
        b.add_tie(&aid("a"), &aid("b"), TieWeight::PriestService)
            .unwrap();
        b.add_tie(&aid("b"), &aid("a"), TieWeight::SeniorRole).unwrap();
        let net = b.seal().unwrap();
        let both = net.neighbors(&aid("a"), Direction::Both).unwrap();
        assert_eq!(both, BTreeSet::from([aid("b")]));
        assert_eq!(both.len(), 1);

        // The undirected view collapses the pair to one edge at the max level.
        let view = net.undirected_view(&IncludeFilter::All);
        assert_eq!(view.edge_count, 1);
        assert_eq!(view.weight_total, 2);
    }

    #[test]
    fn ordination_year_invariant_enforced() {
        let mut early = actor("young");
        early.birth_year = Some(1980);
        early.ordination_year = Some(1990);
        let mut b = NetworkBuilder::new();
        let err = b.add_actor(early).unwrap_err();
        assert!(matches!(err, GraphError::InvariantViolation(_)));
    }

    #[test]
    fn actor_id_charset() {
        assert!(ActorId::new("o'malley-2").is_ok());
        assert!(ActorId::new("").is_err());
        assert!(ActorId::new("two words").is_err());
        assert!(ActorId::new("a,b").is_err());
        assert!(ActorId::new("q\"uote").is_err());
    }

    #[test]
    fn undirected_view_respects_filter() {
        let mut b = NetworkBuilder::new();
        b.add_actor(actor("a")).unwrap();
        b.add_actor(actor("b")).unwrap();
        let mut retired = actor("r");
        retired.status = Status::Retired;
        b.add_actor(retired).unwrap();
        b.add_tie(&aid("a"), &aid("b"), TieWeight::PriestService)
            .unwrap();
        b.add_tie(&aid("a"), &aid("r"), TieWeight::AuxiliaryBishop)
            .unwrap();
        let net = b.seal().unwrap();

        let all = net.undirected_view(&IncludeFilter::All);
        assert_eq!(all.node_count(), 3);
        assert_eq!(all.edge_count, 2);

        let active = net.undirected_view(&IncludeFilter::ActiveOnly);
        assert_eq!(active.node_count(), 2);
        assert_eq!(active.edge_count, 1);
    }
}
