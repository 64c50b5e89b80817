//! Labeled predecessor structure over keys `1..=span`.
//!
//! Keys are grouped into buckets of `⌈log₂log₂ max(span, 4)⌉` consecutive
//! positions; a flat label array answers membership, and a vEB tree over the
//! non-empty bucket indices answers cross-bucket predecessor queries.
//! Initialization is linear in the span.

mod tree;

use std::cell::Cell;

use crate::error::{Error, Result};
use tree::Tree;

const ABSENT: u32 = u32::MAX;

#[derive(Debug, Clone)]
pub struct VebMap {
    span: usize,
    width: usize,
    labels: Vec<u32>,
    bucket_of: Vec<u32>,
    bucket_len: Vec<u32>,
    inner: Option<Tree>,
    len: usize,
    probes: Cell<u64>,
    build_writes: u64,
}

/// `⌈log₂log₂ max(span, 4)⌉`, at least 1.
pub fn bucket_width(span: usize) -> usize {
    let n = span.max(4) as f64;
    (n.log2().log2().ceil() as usize).max(1)
}

impl VebMap {
    pub fn new(span: usize) -> Self {
        let width = bucket_width(span);
        let buckets = span.div_ceil(width);
        let mut writes = 0u64;
        let mut labels = Vec::with_capacity(span + 1);
        labels.resize(span + 1, ABSENT);
        writes += span as u64 + 1;
        // division table, filled sequentially
        let mut bucket_of = Vec::with_capacity(span + 1);
        bucket_of.push(0);
        let (mut k, mut r) = (1u32, 0usize);
        for _ in 1..=span {
            bucket_of.push(k);
            r += 1;
            if r == width {
                r = 0;
                k += 1;
            }
        }
        writes += span as u64 + 1;
        let bucket_len = vec![0; buckets + 1];
        writes += buckets as u64 + 1;
        let inner = (buckets > 0).then(|| {
            let bits = usize::BITS - buckets.saturating_sub(1).leading_zeros();
            Tree::new(bits, &mut writes)
        });
        VebMap {
            span,
            width,
            labels,
            bucket_of,
            bucket_len,
            inner,
            len: 0,
            probes: Cell::new(0),
            build_writes: writes,
        }
    }

    /// Builds from strictly increasing `(key, label)` entries.
    pub fn build(span: usize, entries: &[(usize, usize)]) -> Result<Self> {
        let mut m = Self::new(span);
        let mut last = 0;
        for &(key, label) in entries {
            if key == 0 || key > span {
                return Err(Error::KeyRange { key, span });
            }
            if key <= last {
                return Err(Error::KeyOrder(key, last));
            }
            last = key;
            m.insert_unchecked(key, label);
        }
        m.build_writes += m.probes.get();
        m.probes.set(0);
        Ok(m)
    }

    /// Builds from a dense sequence: position `p` (1-based) holds `labels[p-1]`
    /// when it is `Some`.
    pub fn from_dense<I: IntoIterator<Item = Option<usize>>>(span: usize, labels: I) -> Self {
        let mut m = Self::new(span);
        for (i, l) in labels.into_iter().enumerate() {
            if let Some(l) = l {
                m.insert_unchecked(i + 1, l);
            }
        }
        m.build_writes += m.probes.get();
        m.probes.set(0);
        m
    }

    #[inline]
    fn probe(&self, k: u64) {
        self.probes.set(self.probes.get() + k);
    }

    pub fn span(&self) -> usize {
        self.span
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Bucket index `⌈x / width⌉` read from the division table.
    pub fn bucket_of(&self, x: usize) -> usize {
        self.bucket_of[x] as usize
    }

    /// Cumulative cell accesses since construction.
    pub fn probes(&self) -> u64 {
        self.probes.get()
    }

    /// Cells written while building.
    pub fn build_writes(&self) -> u64 {
        self.build_writes
    }

    fn check_key(&self, key: usize) -> Result<()> {
        if key == 0 || key > self.span {
            Err(Error::KeyRange { key, span: self.span })
        } else {
            Ok(())
        }
    }

    fn insert_unchecked(&mut self, key: usize, label: usize) {
        assert!(label < ABSENT as usize, "label out of range");
        self.probe(3);
        self.labels[key] = label as u32;
        let k = self.bucket_of[key] as usize;
        self.bucket_len[k] += 1;
        self.len += 1;
        if self.bucket_len[k] == 1 {
            self.inner.as_mut().unwrap().insert(k as u32 - 1, &self.probes);
        }
    }

    pub fn insert(&mut self, key: usize, label: usize) -> Result<()> {
        self.check_key(key)?;
        self.probe(1);
        if self.labels[key] != ABSENT {
            return Err(Error::DuplicateKey(key));
        }
        self.insert_unchecked(key, label);
        Ok(())
    }

    /// Removes `key`, returning its label.
    pub fn delete(&mut self, key: usize) -> Result<usize> {
        self.check_key(key)?;
        self.probe(1);
        let old = self.labels[key];
        if old == ABSENT {
            return Err(Error::MissingKey(key));
        }
        self.probe(3);
        self.labels[key] = ABSENT;
        let k = self.bucket_of[key] as usize;
        self.bucket_len[k] -= 1;
        self.len -= 1;
        if self.bucket_len[k] == 0 {
            self.inner.as_mut().unwrap().delete(k as u32 - 1, &self.probes);
        }
        Ok(old as usize)
    }

    /// Changes the label of a present key, returning the old one.
    pub fn relabel(&mut self, key: usize, label: usize) -> Result<usize> {
        self.check_key(key)?;
        assert!(label < ABSENT as usize, "label out of range");
        self.probe(2);
        let old = self.labels[key];
        if old == ABSENT {
            return Err(Error::MissingKey(key));
        }
        self.labels[key] = label as u32;
        Ok(old as usize)
    }

    pub fn retrieve(&self, key: usize) -> Option<usize> {
        if key == 0 || key > self.span {
            return None;
        }
        self.probe(1);
        let l = self.labels[key];
        (l != ABSENT).then_some(l as usize)
    }

    pub fn contains(&self, key: usize) -> bool {
        self.retrieve(key).is_some()
    }

    /// Largest key `<= y`.
    pub fn find_prev(&self, y: usize) -> Option<usize> {
        if y == 0 || self.len == 0 {
            return None;
        }
        let y = y.min(self.span);
        self.probe(1);
        let k = self.bucket_of[y] as usize;
        let start = (k - 1) * self.width + 1;
        for x in (start..=y).rev() {
            self.probe(1);
            if self.labels[x] != ABSENT {
                return Some(x);
            }
        }
        let kb = self.inner.as_ref().unwrap().pred(k as u32 - 1, &self.probes)? as usize + 1;
        let start = (kb - 1) * self.width + 1;
        for x in (start..=(kb * self.width).min(self.span)).rev() {
            self.probe(1);
            if self.labels[x] != ABSENT {
                return Some(x);
            }
        }
        unreachable!("non-empty bucket {kb} has no key")
    }

    /// Smallest key `>= y`.
    pub fn find_next(&self, y: usize) -> Option<usize> {
        if y > self.span || self.len == 0 {
            return None;
        }
        let y = y.max(1);
        self.probe(1);
        let k = self.bucket_of[y] as usize;
        let end = (k * self.width).min(self.span);
        for x in y..=end {
            self.probe(1);
            if self.labels[x] != ABSENT {
                return Some(x);
            }
        }
        let kb = self.inner.as_ref().unwrap().succ(k as u32 - 1, &self.probes)? as usize + 1;
        let start = (kb - 1) * self.width + 1;
        for x in start..=(kb * self.width).min(self.span) {
            self.probe(1);
            if self.labels[x] != ABSENT {
                return Some(x);
            }
        }
        unreachable!("non-empty bucket {kb} has no key")
    }

    /// Largest key `< y`.
    pub fn prev_before(&self, y: usize) -> Option<usize> {
        y.checked_sub(1).and_then(|z| self.find_prev(z))
    }

    /// Smallest key `> y`.
    pub fn next_after(&self, y: usize) -> Option<usize> {
        self.find_next(y + 1)
    }

    pub fn first(&self) -> Option<usize> {
        self.find_next(1)
    }

    pub fn last(&self) -> Option<usize> {
        self.find_prev(self.span)
    }

    /// Keys and labels in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.span).filter_map(move |k| {
            let l = self.labels[k];
            (l != ABSENT).then_some((k, l as usize))
        })
    }
}
