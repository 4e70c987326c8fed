use std::collections::HashMap;
use std::io::Write;
use std::sync::Arc;

use crate::encoder::panel::{PanelLayout, PanelShape};
use crate::encoder::DeltaSignature;

/// Signatures with any `|delta|` above this bypass the table.
pub const DEFAULT_BAND: i32 = 4;

type Key = (PanelShape, Vec<i8>);

/// Optimal assignments keyed by canonical (shape, deltas).
#[derive(Clone, Debug)]
pub struct MemoTable {
    band: i32,
    table: HashMap<Key, Arc<[i8]>>,
    layouts: HashMap<PanelShape, Arc<PanelLayout>>,
    lookups: u64,
    hits: u64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MemoStats {
    pub entries: usize,
    pub bytes_estimate: usize,
    pub hit_rate: f64,
    pub lookups: u64,
}

impl Default for MemoTable {
    fn default() -> Self {
        Self::with_band(DEFAULT_BAND)
    }
}

impl MemoTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_band(band: i32) -> Self {
        MemoTable { band, table: HashMap::new(), layouts: HashMap::new(), lookups: 0, hits: 0 }
    }

    pub fn band(&self) -> i32 {
        self.band
    }

    pub fn layout(&mut self, shape: PanelShape) -> Arc<PanelLayout> {
        self.layouts
            .entry(shape)
            .or_insert_with(|| Arc::new(PanelLayout::new(shape)))
            .clone()
    }

    pub(crate) fn key(&self, shape: PanelShape, deltas: &[i32]) -> Option<Key> {
        if deltas.iter().any(|d| d.abs() > self.band) {
            return None;
        }
        Some((shape, deltas.iter().map(|&d| d as i8).collect()))
    }

    pub(crate) fn get(&mut self, key: &Key) -> Option<Arc<[i8]>> {
        self.lookups += 1;
        let hit = self.table.get(key).cloned();
        if hit.is_some() {
            self.hits += 1;
        }
        hit
    }

    pub(crate) fn insert(&mut self, key: Key, signs: Arc<[i8]>) {
        self.table.insert(key, signs);
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn stats(&self) -> MemoStats {
        let per_entry = std::mem::size_of::<Key>() + std::mem::size_of::<Arc<[i8]>>() + 16;
        let bytes = self
            .table
            .iter()
            .map(|((_, d), s)| per_entry + d.len() + s.len())
            .sum();
        MemoStats {
            entries: self.table.len(),
            bytes_estimate: bytes,
            hit_rate: if self.lookups == 0 { 0.0 } else { self.hits as f64 / self.lookups as f64 },
            lookups: self.lookups,
        }
    }

    /// Stored keys as signatures, sorted.
    pub fn signatures(&self) -> Vec<DeltaSignature> {
        let mut out: Vec<_> = self
            .table
            .keys()
            .map(|(shape, d)| DeltaSignature { shape: *shape, deltas: d.iter().map(|&v| v as i32).collect() })
            .collect();
        out.sort_by(|x, y| (x.shape, &x.deltas).cmp(&(y.shape, &y.deltas)));
        out
    }

    /// One line per entry: shape, deltas, cardinality. Sorted for diffing.
    pub fn dump<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let mut rows: Vec<_> = self
            .table
            .iter()
            .map(|((shape, d), s)| (format!("{shape:?} {d:?}"), s.iter().filter(|&&v| v != 0).count()))
            .collect();
        rows.sort();
        for (key, card) in rows {
            writeln!(out, "{key} {card}")?;
        }
        Ok(())
    }
}

pub fn memo_stats(memo: &MemoTable) -> MemoStats {
    memo.stats()
}
