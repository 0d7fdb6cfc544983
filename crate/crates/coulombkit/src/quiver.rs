//! Quiver graphs, dimension vectors, gauge-theory inputs, and the exact
//! positive-(semi)definiteness trichotomy of the associated Cartan matrix.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::linalg;

/// An undirected multigraph with ordered, string-labelled vertices.
/// Loops are allowed. Edges are stored canonically as index pairs `(i, j)`
/// with `i <= j`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
    affine_vertex: Option<usize>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, edge_ids: &[(String, String)]) -> Result<Self> {
        Self::with_affine_vertex(vertices, edge_ids, None)
    }

    pub fn with_affine_vertex(
        vertices: Vec<String>,
        edge_ids: &[(String, String)],
        affine_vertex: Option<String>,
    ) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::invariant("vertices-nonempty", "quiver has no vertices"));
        }
        let mut seen = std::collections::BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::invariant("vertex-ids-unique", format!("duplicate vertex id `{v}`")));
            }
        }
        let index = |id: &String| -> Result<usize> {
            vertices
                .iter()
                .position(|x| x == id)
                .ok_or_else(|| Error::invariant("edge-endpoints-exist", format!("unknown vertex id `{id}`")))
        };
        let mut edges = Vec::with_capacity(edge_ids.len());
        for (a, b) in edge_ids {
            let (i, j) = (index(a)?, index(b)?);
            edges.push((i.min(j), i.max(j)));
        }
        edges.sort_unstable();
        let affine_vertex = match affine_vertex {
            None => None,
            Some(id) => Some(index(&id)?),
        };
        Ok(Quiver { vertices, edges, affine_vertex })
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn affine_vertex(&self) -> Option<usize> {
        self.affine_vertex
    }

    /// Number of edges between distinct `i` and `j`, or loops at `i = j`.
    pub fn edge_multiplicity(&self, i: usize, j: usize) -> usize {
        let key = (i.min(j), i.max(j));
        self.edges.iter().filter(|&&e| e == key).count()
    }

    /// Is the induced subgraph on `keep` connected? (Always true for a
    /// single vertex, false for the empty set.)
    pub fn is_connected_on(&self, keep: &[bool]) -> bool {
        let n = self.n_vertices();
        let first = match (0..n).find(|&i| keep[i]) {
            Some(i) => i,
            None => return false,
        };
        let mut visited = vec![false; n];
        let mut stack = vec![first];
        visited[first] = true;
        while let Some(i) = stack.pop() {
            for &(a, b) in &self.edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == i && keep[y] && !visited[y] {
                        visited[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        (0..n).all(|i| !keep[i] || visited[i])
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_on(&vec![true; self.n_vertices()])
    }
}

/// A nonnegative integer vector indexed by the quiver's vertices, in
/// declared order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &DimVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise difference; `None` if any entry would go negative.
    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        let mut out = Vec::with_capacity(self.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(DimVector(out))
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: u32) -> DimVector {
        DimVector(self.0.iter().map(|&x| x * k).collect())
    }

    pub fn support(&self) -> Vec<bool> {
        self.0.iter().map(|&x| x > 0).collect()
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&x| x as i64).collect()
    }
}

/// Symmetric generalized Cartan matrix of a quiver: `C = 2I - A` where `A`
/// counts edges (loops twice on the diagonal).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrix(pub Vec<Vec<i64>>);

impl CartanMatrix {
    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// Matrix-vector product `C b` in i64.
    pub fn apply(&self, b: &[i64]) -> Vec<i64> {
        self.0
            .iter()
            .map(|row| row.iter().zip(b).map(|(c, x)| c * x).sum())
            .collect()
    }

    /// The symmetric pairing `<a, C b>`, exact in integers.
    pub fn pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        let cb = self.apply(b);
        a.iter().zip(&cb).map(|(x, y)| x * y).sum()
    }
}

/// Compute the Cartan matrix of a quiver.
pub fn cartan_matrix(q: &Quiver) -> CartanMatrix {
    let n = q.n_vertices();
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let a_ij = if i == j {
                2 * q.edge_multiplicity(i, i) as i64
            } else {
                q.edge_multiplicity(i, j) as i64
            };
            c[i][j] = if i == j { 2 - a_ij } else { -a_ij };
        }
    }
    CartanMatrix(c)
}

/// Trichotomy of a connected quiver by the signature of its Cartan form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphClass {
    /// Positive definite (finite ADE).
    Finite,
    /// Positive semidefinite with one-dimensional kernel; `delta` is the
    /// primitive positive kernel vector.
    Affine { delta: DimVector },
    /// Everything else.
    Indefinite,
}

/// Classify a connected quiver as Finite / Affine / Indefinite by exact
/// integer elimination. Errors on disconnected input.
pub fn classify_graph(q: &Quiver) -> Result<GraphClass> {
    if !q.is_connected() {
        return Err(Error::unsupported("classify_graph", "quiver is disconnected".to_string()));
    }
    let c = cartan_matrix(q);
    let c128: Vec<Vec<i128>> = c.0.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let kernel = linalg::kernel_basis(&c128, c.n());
    match kernel.len() {
        0 => {
            if is_positive_definite(&c128) {
                Ok(GraphClass::Finite)
            } else {
                Ok(GraphClass::Indefinite)
            }
        }
        1 => {
            let k = &kernel[0];
            // Semidefiniteness given a one-dimensional kernel spanned by k:
            // writing x = y + t k with y_i = 0 at some i with k_i != 0 gives
            // q(x) = q(y), so C is PSD iff the principal submatrix with row
            // and column i deleted is positive definite.
            let i = k.iter().position(|&x| x != 0).expect("nonzero kernel vector");
            let sub: Vec<Vec<i128>> = (0..c.n())
                .filter(|&r| r != i)
                .map(|r| (0..c.n()).filter(|&s| s != i).map(|s| c128[r][s]).collect())
                .collect();
            if !is_positive_definite(&sub) {
                return Ok(GraphClass::Indefinite);
            }
            let mut delta = k.clone();
            if delta.iter().any(|&x| x < 0) {
                for x in &mut delta {
                    *x = -*x;
                }
            }
            if delta.iter().any(|&x| x <= 0) {
                // A connected PSD matrix has a strictly positive kernel
                // vector, so this branch is unreachable; keep it as a guard.
                return Ok(GraphClass::Indefinite);
            }
            let delta = DimVector(delta.iter().map(|&x| x as u32).collect());
            Ok(GraphClass::Affine { delta })
        }
        _ => Ok(GraphClass::Indefinite),
    }
}

fn is_positive_definite(m: &[Vec<i128>]) -> bool {
    if m.is_empty() {
        return true;
    }
    linalg::leading_principal_minors(m).iter().all(|&d| d > 0)
}

/// Which group the magnetic charges live in for a quiver theory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupConvention {
    /// Product of general linear groups, one per vertex.
    ProdGl,
    /// The same product divided by the diagonal scalar subgroup.
    ProdGlModCenter,
}

impl GroupConvention {
    pub fn as_str(&self) -> &'static str {
        match self {
            GroupConvention::ProdGl => "prod-gl",
            GroupConvention::ProdGlModCenter => "prod-gl-mod-center",
        }
    }
}

/// The universal input: a quiver gauge theory, the rank-one SL(2) family
/// with `n` fundamental flavors, or an abelian theory with prescribed
/// hypermultiplet charges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GaugeTheory {
    Quiver {
        quiver: Quiver,
        v: DimVector,
        w: DimVector,
        group: GroupConvention,
    },
    /// SL(2) with `flavors` hypermultiplets in the fundamental; the magnetic
    /// charge is a single integer `n` for `diag(n, -n)`.
    Sl2Flavor { flavors: u32 },
    /// U(1) with one weight form per listed (nonzero) charge; list `q` and
    /// `-q` together for a full hypermultiplet of charge `q`.
    U1Flavor { charges: Vec<i64> },
}

impl GaugeTheory {
    /// Validating constructor for quiver theories.
    pub fn quiver(quiver: Quiver, v: DimVector, w: DimVector, group: GroupConvention) -> Result<Self> {
        let n = quiver.n_vertices();
        if v.len() != n || w.len() != n {
            return Err(Error::invariant(
                "dimension-vector-length",
                format!("v/w must have {} entries", n),
            ));
        }
        if group == GroupConvention::ProdGlModCenter {
            if !w.is_zero() {
                return Err(Error::invariant(
                    "mod-center-w-zero",
                    "prod-gl-mod-center requires w = 0".to_string(),
                ));
            }
            if v.is_zero() {
                return Err(Error::invariant("v-nonzero", "v must be nonzero".to_string()));
            }
            if !quiver.is_connected_on(&v.support()) {
                return Err(Error::invariant(
                    "mod-center-support-connected",
                    "support disconnected".to_string(),
                ));
            }
        }
        Ok(GaugeTheory::Quiver { quiver, v, w, group })
    }

    pub fn sl2(flavors: u32) -> Self {
        GaugeTheory::Sl2Flavor { flavors }
    }

    /// Destructure as a quiver theory; `op` names the caller in the error.
    pub fn as_quiver(&self, op: &'static str) -> Result<(&Quiver, &DimVector, &DimVector)> {
        match self {
            GaugeTheory::Quiver { quiver, v, w, .. } => Ok((quiver, v, w)),
            _ => Err(Error::unsupported(op, "requires a quiver theory")),
        }
    }

    pub fn u1(charges: Vec<i64>) -> Result<Self> {
        if charges.is_empty() || charges.iter().any(|&c| c == 0) {
            return Err(Error::invariant(
                "u1-charges-nonzero",
                "u1_charges must be a nonempty list of nonzero integers".to_string(),
            ));
        }
        Ok(GaugeTheory::U1Flavor { charges })
    }
}

/// Parse a theory from its JSON description.
///
/// Quiver form: `{"vertices": [...], "edges": [[i,j],...], "v": {...},
/// "w": {...}, "group": "prod-gl"|"prod-gl-mod-center"}` with an optional
/// `"affine_vertex"`. Special forms: `{"sl2_flavors": N}` and
/// `{"u1_charges": [c,...]}`.
pub fn parse_theory(input: &str) -> Result<GaugeTheory> {
    let value: Value =
        serde_json::from_str(input).map_err(|e| Error::Malformed(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Malformed("top-level JSON object expected".to_string()))?;

    if let Some(n) = obj.get("sl2_flavors") {
        let n = n
            .as_u64()
            .ok_or_else(|| Error::invariant("sl2-flavors-nonnegative", "sl2_flavors must be a nonnegative integer"))?;
        return Ok(GaugeTheory::sl2(n as u32));
    }
    if let Some(cs) = obj.get("u1_charges") {
        let arr = cs
            .as_array()
            .ok_or_else(|| Error::invariant("u1-charges-nonzero", "u1_charges must be an array"))?;
        let mut charges = Vec::with_capacity(arr.len());
        for c in arr {
            let c = c
                .as_i64()
                .ok_or_else(|| Error::invariant("u1-charges-nonzero", "charges must be integers"))?;
            charges.push(c);
        }
        return GaugeTheory::u1(charges);
    }

    let vertices: Vec<String> = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Malformed("missing `vertices` array".to_string()))?
        .iter()
        .map(|v| match v {
            Value::String(s) => Ok(s.clone()),
            other => Ok(other.to_string()),
        })
        .collect::<Result<_>>()?;
    let edges_raw = obj
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Malformed("missing `edges` array".to_string()))?;
    let mut edge_ids = Vec::with_capacity(edges_raw.len());
    for e in edges_raw {
        let pair = e
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::Malformed("each edge must be a two-element array".to_string()))?;
        let id = |v: &Value| match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        edge_ids.push((id(&pair[0]), id(&pair[1])));
    }
    let affine_vertex = obj.get("affine_vertex").map(|v| match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    });
    let quiver = Quiver::with_affine_vertex(vertices.clone(), &edge_ids, affine_vertex)?;

    let read_dims = |key: &str| -> Result<DimVector> {
        match obj.get(key) {
            None => Ok(DimVector::zero(vertices.len())),
            Some(Value::Object(map)) => {
                for k in map.keys() {
                    if !vertices.contains(k) {
                        return Err(Error::invariant(
                            "dimension-vector-keys-known",
                            format!("`{key}` mentions unknown vertex `{k}`"),
                        ));
                    }
                }
                let mut out = Vec::with_capacity(vertices.len());
                for id in &vertices {
                    let x = map.get(id).and_then(Value::as_u64).unwrap_or(0);
                    out.push(x as u32);
                }
                Ok(DimVector(out))
            }
            Some(_) => Err(Error::Malformed(format!("`{key}` must be an object"))),
        }
    };
    let v = read_dims("v")?;
    let w = read_dims("w")?;
    let group = match obj.get("group").and_then(Value::as_str) {
        Some("prod-gl") | None => GroupConvention::ProdGl,
        Some("prod-gl-mod-center") => GroupConvention::ProdGlModCenter,
        Some(other) => {
            return Err(Error::invariant(
                "group-convention-known",
                format!("unknown group convention `{other}`"),
            ))
        }
    };
    GaugeTheory::quiver(quiver, v, w, group)
}

/// Canonical JSON serialization: sorted object keys, vertices in declared
/// order, edges in canonical order. `parse_theory(serialize_theory(t)) == t`.
pub fn serialize_theory(t: &GaugeTheory) -> String {
    let value = theory_to_value(t);
    serde_json::to_string(&value).expect("serializing theory JSON")
}

fn theory_to_value(t: &GaugeTheory) -> Value {
    match t {
        GaugeTheory::Sl2Flavor { flavors } => {
            let mut m = Map::new();
            m.insert("sl2_flavors".to_string(), Value::from(*flavors));
            Value::Object(m)
        }
        GaugeTheory::U1Flavor { charges } => {
            let mut m = Map::new();
            m.insert("u1_charges".to_string(), Value::from(charges.clone()));
            Value::Object(m)
        }
        GaugeTheory::Quiver { quiver, v, w, group } => {
            let ids = quiver.vertex_ids();
            let mut m = Map::new();
            m.insert("vertices".to_string(), Value::from(ids.to_vec()));
            let edges: Vec<Value> = quiver
                .edges()
                .iter()
                .map(|&(i, j)| Value::from(vec![ids[i].clone(), ids[j].clone()]))
                .collect();
            m.insert("edges".to_string(), Value::from(edges));
            let dims = |d: &DimVector| {
                let mut dm: BTreeMap<String, u32> = BTreeMap::new();
                for (id, &x) in ids.iter().zip(&d.0) {
                    dm.insert(id.clone(), x);
                }
                serde_json::to_value(dm).expect("dim map")
            };
            m.insert("v".to_string(), dims(v));
            m.insert("w".to_string(), dims(w));
            m.insert("group".to_string(), Value::from(group.as_str()));
            if let Some(i) = quiver.affine_vertex() {
                m.insert("affine_vertex".to_string(), Value::from(ids[i].clone()));
            }
            Value::Object(m)
        }
    }
}
