use super::{Change, Outbox};
use crate::algebra::{Elem, FiniteSemigroup};
use crate::veb::VebMap;

const ABSENT: u32 = u32::MAX;

/// Groups the letters into consecutive blocks of two or three. Its input is
/// pair-collapsing for the class `C`, so every block product leaves `C`.
#[derive(Debug, Clone)]
pub(crate) struct PairCollapser {
    w: VebMap,
    /// Input key -> key of its group.
    group: Vec<u32>,
    /// Group key -> number of members, 0 elsewhere.
    gsize: Vec<u8>,
    out: Vec<u32>,
    outbox: Outbox,
    in_class: Vec<bool>,
    steps: u64,
}

/// Block sizes for `n >= 2` letters.
fn split(n: usize) -> impl Iterator<Item = usize> {
    let pairs = n / 2;
    (0..pairs).map(move |i| if i + 1 == pairs && n % 2 == 1 { 3 } else { 2 })
}

impl PairCollapser {
    pub(crate) fn new(n: usize, in_class: Vec<bool>) -> Self {
        PairCollapser {
            w: VebMap::new(n),
            group: vec![0; n + 1],
            gsize: vec![0; n + 1],
            out: vec![ABSENT; n + 1],
            outbox: Outbox::default(),
            in_class,
            steps: 0,
        }
    }

    pub(crate) fn count(&self) -> usize {
        self.w.len()
    }

    pub(crate) fn single(&self) -> Option<Elem> {
        self.w.first().and_then(|k| self.w.retrieve(k))
    }

    pub(crate) fn ops(&self) -> u64 {
        self.steps + self.w.probes()
    }

    pub(crate) fn word(&self) -> Vec<Elem> {
        self.w.iter().map(|(_, l)| l).collect()
    }

    pub(crate) fn init(&mut self, t: &FiniteSemigroup, entries: &[(usize, Elem)]) -> Vec<(usize, Elem)> {
        self.w = VebMap::build(self.w.span(), entries).expect("keys are increasing and in range");
        let mut out = Vec::new();
        if entries.len() >= 2 {
            let mut at = 0;
            for size in split(entries.len()) {
                let members = &entries[at..at + size];
                let key = members[size - 1].0;
                let label = t.eval(members.iter().map(|&(_, l)| l)).unwrap();
                debug_assert!(!self.in_class[label]);
                for &(k, _) in members {
                    self.group[k] = key as u32;
                }
                self.gsize[key] = size as u8;
                self.out[key] = label as u32;
                out.push((key, label));
                at += size;
            }
        }
        out
    }

    pub(crate) fn apply(&mut self, t: &FiniteSemigroup, input: &[Change]) -> Vec<Change> {
        for &c in input {
            self.steps += 1;
            match c {
                Change::Set(k, l) if self.w.contains(k) => self.relabel(t, k, l),
                Change::Set(k, l) => self.insert(t, k, l),
                Change::Remove(k) => self.delete(t, k),
            }
        }
        let out = &self.out;
        let diff = self.outbox.drain(|k| (out[k] != ABSENT).then_some(out[k] as Elem));
        // Intermediate states may break this; the net result may not.
        debug_assert!(diff.iter().all(|c| !matches!(*c, Change::Set(_, l) if self.in_class[l])));
        #[cfg(debug_assertions)]
        if self.w.span() <= 512 {
            self.check_invariants(t);
        }
        diff
    }

    /// Groups are consecutive runs of 2 or 3 present keys covering the
    /// word, keyed by their last member and labeled by their product.
    #[cfg(debug_assertions)]
    pub(crate) fn check_invariants(&self, t: &FiniteSemigroup) {
        let keys: Vec<(usize, Elem)> = self.w.iter().collect();
        let outs: Vec<usize> = (1..self.out.len()).filter(|&k| self.out[k] != ABSENT).collect();
        if keys.len() < 2 {
            assert!(outs.is_empty(), "no groups below two letters");
            return;
        }
        let mut at = 0;
        let mut groups = Vec::new();
        while at < keys.len() {
            let g = self.group[keys[at].0] as usize;
            let size = self.gsize[g] as usize;
            assert!((2..=3).contains(&size), "group size {size}");
            let members = &keys[at..at + size];
            assert_eq!(members[size - 1].0, g, "group keyed by its last member");
            assert!(members.iter().all(|&(k, _)| self.group[k] as usize == g));
            let label = t.eval(members.iter().map(|&(_, l)| l)).unwrap();
            assert_eq!(self.out[g] as Elem, label, "group label is the product");
            groups.push(g);
            at += size;
        }
        assert_eq!(groups, outs, "output keys are exactly the group keys");
    }

    fn members(&self, g: usize) -> Vec<usize> {
        let mut m = Vec::with_capacity(4);
        let mut k = g;
        m.push(k);
        for _ in 1..self.gsize[g] {
            k = self.w.prev_before(k).expect("group members are present");
            m.push(k);
        }
        m.reverse();
        m
    }

    fn set_out(&mut self, key: usize, label: u32) {
        self.steps += 1;
        let before = (self.out[key] != ABSENT).then_some(self.out[key] as Elem);
        self.outbox.touch(key, before);
        self.out[key] = label;
    }

    fn clear_group(&mut self, g: usize) {
        self.gsize[g] = 0;
        self.set_out(g, ABSENT);
    }

    fn label_of(&self, t: &FiniteSemigroup, members: &[usize]) -> Elem {
        t.eval(members.iter().map(|&k| self.w.retrieve(k).unwrap())).unwrap()
    }

    fn form(&mut self, t: &FiniteSemigroup, keys: &[usize]) {
        let mut at = 0;
        for size in split(keys.len()) {
            let members = &keys[at..at + size];
            let key = members[size - 1];
            for &k in members {
                self.group[k] = key as u32;
            }
            self.gsize[key] = size as u8;
            let label = self.label_of(t, members);
            self.set_out(key, label as u32);
            at += size;
        }
    }

    fn insert(&mut self, t: &FiniteSemigroup, x: usize, label: Elem) {
        let c = self.w.len();
        match c {
            0 => self.w.insert(x, label).unwrap(),
            1 => {
                let y = self.w.first().unwrap();
                self.w.insert(x, label).unwrap();
                self.form(t, &[x.min(y), x.max(y)]);
            }
            _ => {
                let g = match self.w.prev_before(x) {
                    Some(p) => self.group[p] as usize,
                    None => self.group[self.w.next_after(x).unwrap()] as usize,
                };
                let mut m = self.members(g);
                self.w.insert(x, label).unwrap();
                self.clear_group(g);
                let at = m.partition_point(|&k| k < x);
                m.insert(at, x);
                self.form(t, &m);
            }
        }
    }

    fn delete(&mut self, t: &FiniteSemigroup, x: usize) {
        let c = self.w.len();
        if c == 1 {
            self.w.delete(x).unwrap();
            return;
        }
        let g = self.group[x] as usize;
        let m = self.members(g);
        if c == 2 {
            self.w.delete(x).unwrap();
            self.clear_group(g);
            return;
        }
        let rest: Vec<usize> = m.iter().copied().filter(|&k| k != x).collect();
        if rest.len() >= 2 {
            self.w.delete(x).unwrap();
            self.clear_group(g);
            self.form(t, &rest);
            return;
        }
        let ng = match self.w.prev_before(m[0]) {
            Some(p) => self.group[p] as usize,
            None => self.group[self.w.next_after(*m.last().unwrap()).unwrap()] as usize,
        };
        let mut merged = self.members(ng);
        self.w.delete(x).unwrap();
        self.clear_group(g);
        self.clear_group(ng);
        merged.extend(rest);
        merged.sort_unstable();
        self.form(t, &merged);
    }

    fn relabel(&mut self, t: &FiniteSemigroup, x: usize, label: Elem) {
        self.w.relabel(x, label).unwrap();
        if self.w.len() >= 2 {
            let g = self.group[x] as usize;
            let m = self.members(g);
            let l = self.label_of(t, &m);
            self.set_out(g, l as u32);
        }
    }
}
