//! Bounded look-ahead buffer over the vertex stream.
//!
//! The front record is the candidate. Any other record whose id appears in
//! the candidate's neighbor list is a buffered neighbor.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{VertexId, VertexRecord};

#[derive(Debug, Clone)]
pub struct StreamWindow {
    capacity: usize,
    // Arrival sequence numbers are strictly increasing front to back.
    buffer: VecDeque<(u64, VertexRecord)>,
    membership: HashMap<VertexId, u64>,
    arrivals: u64,
}

impl StreamWindow {
    pub fn new(capacity: usize) -> Result<Self> {
        if capacity == 0 {
            return Err(Error::Config("window size must be at least 1".into()));
        }
        Ok(StreamWindow {
            capacity,
            buffer: VecDeque::with_capacity(capacity),
            membership: HashMap::with_capacity(capacity),
            arrivals: 0,
        })
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.buffer.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buffer.is_empty()
    }

    pub fn contains(&self, id: VertexId) -> bool {
        self.membership.contains_key(&id)
    }

    pub fn iter(&self) -> impl Iterator<Item = &VertexRecord> {
        self.buffer.iter().map(|(_, r)| r)
    }

    /// Pulls records until the window is full or the stream runs dry.
    /// Returns how many records were pulled.
    pub fn fill<I>(&mut self, stream: &mut I) -> usize
    where
        I: Iterator<Item = VertexRecord>,
    {
        let mut pulled = 0;
        while self.buffer.len() < self.capacity {
            let Some(record) = stream.next() else { break };
            let seq = self.arrivals;
            self.arrivals += 1;
            let previous = self.membership.insert(record.id, seq);
            debug_assert!(previous.is_none(), "vertex {} streamed twice", record.id);
            self.buffer.push_back((seq, record));
            pulled += 1;
        }
        pulled
    }

    pub fn candidate(&self) -> Result<&VertexRecord> {
        self.buffer
            .front()
            .map(|(_, r)| r)
            .ok_or(Error::EmptyWindow)
    }

    /// Window records, other than the candidate, adjacent to the candidate.
    pub fn buffered_neighbors(&self, candidate: &VertexRecord) -> Vec<&VertexRecord> {
        self.neighbors_in_window(candidate)
    }

    /// Window records adjacent to `record`, excluding `record` itself, in
    /// window order.
    pub fn neighbors_in_window(&self, record: &VertexRecord) -> Vec<&VertexRecord> {
        let mut seqs: Vec<u64> = if record.neighbors.len() <= self.buffer.len() {
            record
                .neighbors
                .iter()
                .filter(|&&u| u != record.id)
                .filter_map(|u| self.membership.get(u).copied())
                .collect()
        } else {
            self.buffer
                .iter()
                .filter(|(_, r)| r.id != record.id && record.neighbors.binary_search(&r.id).is_ok())
                .map(|&(seq, _)| seq)
                .collect()
        };
        seqs.sort_unstable();
        seqs.iter().map(|&s| &self.buffer[self.slot(s)].1).collect()
    }

    pub fn pop_candidate(&mut self) -> Result<VertexRecord> {
        let (_, record) = self.buffer.pop_front().ok_or(Error::EmptyWindow)?;
        self.membership.remove(&record.id);
        Ok(record)
    }

    /// Removes a record from any position, keeping the order of the rest.
    pub fn remove_by_id(&mut self, id: VertexId) -> Result<VertexRecord> {
        let seq = self.membership.remove(&id).ok_or(Error::NotInWindow(id))?;
        let slot = self.slot(seq);
        let (_, record) = self
            .buffer
            .remove(slot)
            .expect("membership points into buffer");
        Ok(record)
    }

    fn slot(&self, seq: u64) -> usize {
        self.buffer
            .binary_search_by_key(&seq, |&(s, _)| s)
            .expect("membership and buffer agree")
    }

    #[cfg(test)]
    fn consistent(&self) -> bool {
        self.buffer.len() <= self.capacity
            && self.buffer.len() == self.membership.len()
            && self
                .buffer
                .iter()
                .all(|(s, r)| self.membership.get(&r.id) == Some(s))
    }
}
