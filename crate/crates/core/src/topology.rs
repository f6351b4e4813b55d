//! Ring digraphs: necklace encoding, construction, counting and enumeration.
//!
//! Nodes are numbered `0..N` here (`1..=N` in the usual notation); macro-vertex
//! `i` owns nodes `n i .. n (i + 1)`. An arc `(i, k)` means node `i` pursues
//! node `k`, so `a[i][k]` counts such arcs and the Laplacian row `i` carries
//! the out-degree on its diagonal.
//!
//! Inside every macro-vertex the main direction runs `k + 1 -> k`. Entry `k`
//! of the necklace vector is `2` when the reverse arc `k -> k + 1` is present
//! too. Ring arcs join the first node of each macro-vertex to the last node of
//! the previous one, which closes the Hamiltonian pursuit cycle.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::linalg::IntMatrix;
use crate::{Error, Result};

/// Largest `N` for which `2^N` fits the counting arithmetic.
pub const MAX_COUNT_NODES: u32 = 127;
/// Largest necklace length accepted by [`enumerate_simple_rings`].
pub const MAX_ENUMERATION_LENGTH: usize = 24;
/// Largest ring built as a dense matrix.
pub const MAX_RING_NODES: usize = 4096;

/// Binary necklace vector over `{1, 2}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct NecklaceVector(Vec<u8>);

impl NecklaceVector {
    pub fn new(entries: Vec<u8>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidSize("necklace must have at least one entry".into()));
        }
        if let Some(bad) = entries.iter().find(|&&e| e != 1 && e != 2) {
            return Err(Error::InvalidNecklace(format!("entry {bad} is not 1 or 2")));
        }
        Ok(Self(entries))
    }

    /// Parses a comma separated list such as `"2,1,1"`.
    pub fn parse(text: &str) -> Result<Self> {
        let entries = text
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u8>()
                    .map_err(|_| Error::InvalidNecklace(format!("cannot parse {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    /// The pure pursuit macro-vertex: a single node.
    pub fn pursuit() -> Self {
        Self(vec![1])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u8] {
        &self.0
    }

    /// Smallest `p` dividing the length such that the vector is `p`-periodic.
    pub fn minimal_period(&self) -> usize {
        let n = self.0.len();
        (1..=n)
            .filter(|p| n % p == 0)
            .find(|&p| (p..n).all(|i| self.0[i] == self.0[i - p]))
            .unwrap_or(n)
    }

    pub fn is_periodic(&self) -> bool {
        self.minimal_period() < self.0.len()
    }

    pub fn rotate_left(&self, shift: usize) -> Self {
        let mut v = self.0.clone();
        let len = v.len();
        v.rotate_left(shift % len);
        Self(v)
    }

    /// Lexicographically largest cyclic rotation. For any vector containing a
    /// `1`, this rotation ends with `1`, so it is directly buildable as a ring.
    pub fn canonical(&self) -> Self {
        (0..self.0.len())
            .map(|s| self.rotate_left(s))
            .max()
            .expect("necklace is never empty")
    }

    /// Whether the vector is the canonical representative of its class.
    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }
}

impl TryFrom<Vec<u8>> for NecklaceVector {
    type Error = Error;

    fn try_from(entries: Vec<u8>) -> Result<Self> {
        Self::new(entries)
    }
}

impl From<NecklaceVector> for Vec<u8> {
    fn from(v: NecklaceVector) -> Self {
        v.0
    }
}

impl FromStr for NecklaceVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for NecklaceVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingClass {
    Simple,
    Complex,
}

impl fmt::Display for RingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RingClass::Simple => "simple",
            RingClass::Complex => "complex",
        })
    }
}

/// A ring digraph: `m` copies of the macro-vertex described by `necklace`.
///
/// Serialized as `{"necklace":[2,1],"m":4}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTopology", into = "RawTopology")]
pub struct RingTopology {
    necklace: NecklaceVector,
    m: usize,
}

#[derive(Serialize, Deserialize)]
struct RawTopology {
    necklace: NecklaceVector,
    m: usize,
}

impl TryFrom<RawTopology> for RingTopology {
    type Error = Error;

    fn try_from(raw: RawTopology) -> Result<Self> {
        Self::new(raw.necklace, raw.m)
    }
}

impl From<RingTopology> for RawTopology {
    fn from(t: RingTopology) -> Self {
        RawTopology { necklace: t.necklace, m: t.m }
    }
}

impl RingTopology {
    /// Validates the replication count and the dropped-arc convention: for
    /// `n >= 2` the last necklace entry must be `1`, because the reverse of the
    /// ring arc is never part of a ring digraph. For `n = 1` an entry of `2`
    /// adds the reverse ring arcs.
    pub fn new(necklace: NecklaceVector, m: usize) -> Result<Self> {
        let n = necklace.len();
        if m == 0 || n == 0 {
            return Err(Error::InvalidSize(format!("m = {m}, n = {n}")));
        }
        if n >= 2 && necklace.entries()[n - 1] != 1 {
            return Err(Error::InvalidNecklace(format!(
                "last entry of {necklace} must be 1; rotate it to {}",
                necklace.canonical()
            )));
        }
        let nodes = n
            .checked_mul(m)
            .filter(|&total| total <= MAX_RING_NODES)
            .ok_or_else(|| Error::ResourceLimit(format!("ring with m = {m}, n = {n} is too large")))?;
        debug_assert!(nodes >= 1);
        Ok(Self { necklace, m })
    }

    pub fn pursuit(nodes: usize) -> Result<Self> {
        Self::new(NecklaceVector::pursuit(), nodes)
    }

    pub fn necklace(&self) -> &NecklaceVector {
        &self.necklace
    }

    /// Number of macro-vertices.
    pub fn replication(&self) -> usize {
        self.m
    }

    /// Nodes per macro-vertex.
    pub fn macro_size(&self) -> usize {
        self.necklace.len()
    }

    pub fn nodes(&self) -> usize {
        self.m * self.necklace.len()
    }

    /// Whether the digraph carries the `n = 1` reverse ring arcs, which take
    /// it outside the family covered by the product-form characteristic
    /// polynomial.
    pub fn has_reverse_ring_arcs(&self) -> bool {
        self.necklace.len() == 1 && self.necklace.entries()[0] == 2
    }

    /// Adjacency matrix with arc multiplicities (loops kept on the diagonal).
    pub fn adjacency(&self) -> IntMatrix {
        let n = self.necklace.len();
        let m = self.m;
        let total = n * m;
        let mut adj = IntMatrix::zeros(total);
        for block in 0..m {
            let base = block * n;
            for k in 0..n.saturating_sub(1) {
                adj.add_to(base + k + 1, base + k, 1);
                if self.necklace.entries()[k] == 2 {
                    adj.add_to(base + k, base + k + 1, 1);
                }
            }
            let next_first = ((block + 1) % m) * n;
            let last = base + n - 1;
            adj.add_to(next_first, last, 1);
            if self.has_reverse_ring_arcs() {
                adj.add_to(last, next_first, 1);
            }
        }
        adj
    }

    pub fn laplacian(&self) -> IntMatrix {
        laplacian_of(&self.adjacency())
    }

    /// Complex iff the digraph is a round replication of a smaller one.
    pub fn classify(&self) -> RingClass {
        if self.m >= 2 || self.necklace.is_periodic() {
            RingClass::Complex
        } else {
            RingClass::Simple
        }
    }
}

/// `l_ii = Σ_{k≠i} a_ik`, `l_ik = -a_ik`; loops do not contribute.
pub fn laplacian_of(adjacency: &IntMatrix) -> IntMatrix {
    let size = adjacency.size();
    let mut lap = IntMatrix::zeros(size);
    for i in 0..size {
        let mut degree = 0;
        for k in 0..size {
            if k != i {
                let a = adjacency.get(i, k);
                degree += a;
                lap.set(i, k, -a);
            }
        }
        lap.set(i, i, degree);
    }
    lap
}

/// Whether some node can be reached from every node by following arcs, i.e.
/// the digraph has a spanning converging tree rooted there.
pub fn has_spanning_converging_tree(adjacency: &IntMatrix) -> bool {
    let size = adjacency.size();
    if size == 0 {
        return false;
    }
    (0..size).any(|root| {
        let mut seen = vec![false; size];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(k) = stack.pop() {
            for i in 0..size {
                if !seen[i] && i != k && adjacency.get(i, k) > 0 {
                    seen[i] = true;
                    stack.push(i);
                }
            }
        }
        seen.into_iter().all(|s| s)
    })
}

/// Builds the ring and its Laplacian.
pub fn build_ring(necklace: NecklaceVector, m: usize) -> Result<(RingTopology, IntMatrix)> {
    let ring = RingTopology::new(necklace, m)?;
    let lap = ring.laplacian();
    Ok((ring, lap))
}

/// Number `Y(N)` of non-isomorphic simple rings on `N` nodes, with `Y(1) = 2`.
///
/// `Y(N) = (2^N - Σ_{d | N, d < N} d Y(d)) / N`.
pub fn count_simple_rings(nodes: u32) -> Result<u128> {
    if nodes == 0 {
        return Err(Error::InvalidSize("N must be at least 1".into()));
    }
    if nodes > MAX_COUNT_NODES {
        return Err(Error::ResourceLimit(format!(
            "2^{nodes} exceeds 128-bit arithmetic (N <= {MAX_COUNT_NODES})"
        )));
    }
    let n = nodes as usize;
    let mut counts = vec![0u128; n + 1];
    for size in 1..=n {
        if n % size != 0 {
            continue;
        }
        let proper: u128 = (1..size)
            .filter(|d| size % d == 0)
            .map(|d| d as u128 * counts[d])
            .sum();
        let numerator = (1u128 << size) - proper;
        debug_assert_eq!(numerator % size as u128, 0);
        counts[size] = numerator / size as u128;
    }
    Ok(counts[n])
}

/// One canonical representative (see [`NecklaceVector::canonical`]) per
/// cyclic-shift class of non-periodic necklace vectors of length `n`.
///
/// Generated as Lyndon words with the alphabet ordered `2 < 1`, so each word
/// is the lexicographically largest rotation of its class in the usual order.
pub fn enumerate_simple_rings(n: usize) -> Result<Vec<NecklaceVector>> {
    if n == 0 {
        return Err(Error::InvalidSize("n must be at least 1".into()));
    }
    if n > MAX_ENUMERATION_LENGTH {
        return Err(Error::ResourceLimit(format!(
            "enumeration is limited to n <= {MAX_ENUMERATION_LENGTH}"
        )));
    }
    // Symbol 0 stands for entry 2, symbol 1 for entry 1.
    let to_entry = |s: u8| if s == 0 { 2 } else { 1 };
    let mut out = Vec::new();
    let mut word: Vec<u8> = vec![0];
    loop {
        if word.len() == n {
            out.push(NecklaceVector(word.iter().map(|&s| to_entry(s)).collect()));
        }
        let period = word.len();
        while word.len() < n {
            word.push(word[word.len() - period]);
        }
        while word.last() == Some(&1) {
            word.pop();
        }
        match word.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    Ok(out)
}
