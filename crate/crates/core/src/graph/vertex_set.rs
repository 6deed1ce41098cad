use super::GraphError;

/// A subset of `0..universe`, remembering the order in which members were added.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    mask: Vec<bool>,
    members: Vec<usize>,
}

impl VertexSet {
    pub fn new(universe: usize) -> Self {
        VertexSet { mask: vec![false; universe], members: Vec::new() }
    }

    pub fn full(universe: usize) -> Self {
        VertexSet { mask: vec![true; universe], members: (0..universe).collect() }
    }

    /// Repeated members are kept once, at their first position.
    pub fn from_members<I>(universe: usize, members: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = VertexSet::new(universe);
        for v in members {
            set.insert(v)?;
        }
        Ok(set)
    }

    /// Returns whether `v` was newly added.
    pub fn insert(&mut self, v: usize) -> Result<bool, GraphError> {
        if v >= self.mask.len() {
            return Err(GraphError::EndpointOutOfRange { u: v, v, node_count: self.mask.len() });
        }
        if self.mask[v] {
            return Ok(false);
        }
        self.mask[v] = true;
        self.members.push(v);
        Ok(true)
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.mask.get(v).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Members of `0..universe` not in the set, in increasing order.
    pub fn complement(&self) -> VertexSet {
        let members = (0..self.mask.len()).filter(|&v| !self.mask[v]).collect();
        VertexSet { mask: self.mask.iter().map(|b| !b).collect(), members }
    }
}
