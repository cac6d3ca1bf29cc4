//! Monotone bucket queue for peeling algorithms.

use crate::error::{GraphError, Result};
use crate::model::VertexId;

/// Priority of a vertex that is never extracted.
pub const NEVER: u32 = u32::MAX;

/// Vertices keyed by integer priority, extracted one bucket at a time in
/// nondecreasing order. Updates append a fresh entry and leave the stale one
/// behind, which extraction skips.
#[derive(Clone, Debug)]
pub struct Buckets {
    priority: Vec<u32>,
    extracted: Vec<bool>,
    buckets: Vec<Vec<VertexId>>,
    cursor: usize,
}

impl Buckets {
    pub fn new(priorities: Vec<u32>) -> Self {
        let top = priorities.iter().filter(|&&p| p != NEVER).max().map_or(0, |&p| p as usize + 1);
        let mut buckets = vec![Vec::new(); top];
        for (v, &p) in priorities.iter().enumerate() {
            if p != NEVER {
                buckets[p as usize].push(v as VertexId);
            }
        }
        Buckets {
            extracted: vec![false; priorities.len()],
            priority: priorities,
            buckets,
            cursor: 0,
        }
    }

    pub fn priority(&self, v: VertexId) -> u32 {
        self.priority[v as usize]
    }

    /// The bucket the next extraction starts from.
    pub fn cursor(&self) -> usize {
        self.cursor
    }

    /// Removes and returns the lowest nonempty bucket as `(priority, ids)`
    /// with ids sorted, or `None` once every finite-priority vertex is out.
    pub fn next_bucket(&mut self) -> Option<(u32, Vec<VertexId>)> {
        while self.cursor < self.buckets.len() {
            let b = self.cursor;
            let mut ids = std::mem::take(&mut self.buckets[b]);
            ids.retain(|&v| self.priority[v as usize] == b as u32 && !self.extracted[v as usize]);
            ids.sort_unstable();
            ids.dedup();
            if ids.is_empty() {
                self.cursor += 1;
                continue;
            }
            for &v in &ids {
                self.extracted[v as usize] = true;
            }
            return Some((b as u32, ids));
        }
        None
    }

    /// Moves `v` to `priority`. Moving below the cursor or touching an
    /// extracted vertex breaks monotonicity and is rejected.
    pub fn update(&mut self, v: VertexId, priority: u32) -> Result<()> {
        let i = v as usize;
        if self.extracted[i] {
            return Err(GraphError::Logic(format!("vertex {v} was already extracted")));
        }
        if priority != NEVER && (priority as usize) < self.cursor {
            return Err(GraphError::Logic(format!(
                "priority {priority} for vertex {v} is below the current bucket {}",
                self.cursor
            )));
        }
        if self.priority[i] == priority {
            return Ok(());
        }
        self.priority[i] = priority;
        if priority != NEVER {
            let p = priority as usize;
            if p >= self.buckets.len() {
                self.buckets.resize_with(p + 1, Vec::new);
            }
            self.buckets[p].push(v);
        }
        Ok(())
    }
}
