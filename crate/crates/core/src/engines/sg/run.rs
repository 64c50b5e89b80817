use super::{Change, Outbox};
use crate::algebra::{Elem, FiniteSemigroup, ReesRepresentation};
use crate::veb::VebMap;

/// Rees coordinates of the removed class, indexed by ids of the ambient
/// semigroup.
#[derive(Debug, Clone)]
pub(crate) struct RunRees {
    coord: Vec<Option<(usize, usize, usize)>>,
    uncoord: Vec<Elem>,
    gsize: usize,
    jcount: usize,
    matrix: Vec<Vec<Option<usize>>>,
    gmul: Vec<usize>,
    ginv: Vec<usize>,
    gid: usize,
}

impl RunRees {
    /// `rees` describes a class of a subsemigroup whose ids map to `t` via
    /// `incl`.
    pub(crate) fn new(t: &FiniteSemigroup, rees: &ReesRepresentation, incl: &[Elem]) -> Self {
        let gsize = rees.group.size();
        let mut coord = vec![None; t.size()];
        let mut uncoord = vec![0; rees.i_count * gsize * rees.j_count];
        for &x in &rees.class {
            let c = rees.coord(x).unwrap();
            coord[incl[x]] = Some(c);
            uncoord[(c.0 * gsize + c.1) * rees.j_count + c.2] = incl[x];
        }
        let gid = rees.group_identity();
        let gmul: Vec<usize> = (0..gsize * gsize).map(|p| rees.group_mul(p / gsize, p % gsize)).collect();
        let ginv = (0..gsize).map(|g| (0..gsize).find(|&h| gmul[g * gsize + h] == gid).unwrap()).collect();
        RunRees { coord, uncoord, gsize, jcount: rees.j_count, matrix: rees.matrix.clone(), gmul, ginv, gid }
    }

    fn mul(&self, g: usize, h: usize) -> usize {
        self.gmul[g * self.gsize + h]
    }

    fn elem(&self, i: usize, g: usize, j: usize) -> Elem {
        self.uncoord[(i * self.gsize + g) * self.jcount + j]
    }

    /// Sandwich entry linking `a` to `b`, when both lie in the class and
    /// their product stays there.
    fn link(&self, a: Elem, b: Elem) -> Option<usize> {
        let (_, _, j) = self.coord[a]?;
        let (i, _, _) = self.coord[b]?;
        self.matrix[j][i]
    }
}

/// Collapses every maximal run of class letters whose product stays in the
/// class into one letter. Group components are only kept correct in total:
/// in SG, moving group mass between class letters does not change the
/// product of the word.
#[derive(Debug, Clone)]
pub(crate) struct RunCollapser {
    w: VebMap,
    out: VebMap,
    runs: VebMap,
    rees: RunRees,
    outbox: Outbox,
    steps: u64,
}

enum Piece {
    Plain(usize, Elem),
    Run { key: usize, i: usize, j: usize },
}

impl RunCollapser {
    pub(crate) fn new(n: usize, rees: RunRees) -> Self {
        RunCollapser {
            w: VebMap::new(n),
            out: VebMap::new(n),
            runs: VebMap::new(n),
            rees,
            outbox: Outbox::default(),
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
        self.steps + self.w.probes() + self.out.probes() + self.runs.probes()
    }

    pub(crate) fn word(&self) -> Vec<Elem> {
        self.w.iter().map(|(_, l)| l).collect()
    }

    pub(crate) fn init(&mut self, _t: &FiniteSemigroup, entries: &[(usize, Elem)]) -> Vec<(usize, Elem)> {
        let span = self.w.span();
        self.w = VebMap::build(span, entries).expect("keys are increasing and in range");
        let r = &self.rees;
        let mut out: Vec<(usize, Elem)> = Vec::new();
        let mut run_keys = Vec::new();
        // open run: (i, g, j, last key, last label)
        let mut open: Option<(usize, usize, usize, usize, Elem)> = None;
        for &(k, l) in entries {
            if let Some((i, g, j, lk, ll)) = open {
                if let Some(p) = r.link(ll, l) {
                    let (_, g2, j2) = r.coord[l].unwrap();
                    open = Some((i, r.mul(r.mul(g, p), g2), j2, k, l));
                    continue;
                }
                out.push((lk, r.elem(i, g, j)));
                run_keys.push((lk, 0));
                open = None;
            }
            match r.coord[l] {
                Some((i, g, j)) => open = Some((i, g, j, k, l)),
                None => out.push((k, l)),
            }
        }
        if let Some((i, g, j, lk, _)) = open {
            out.push((lk, r.elem(i, g, j)));
            run_keys.push((lk, 0));
        }
        out.sort_unstable();
        self.out = VebMap::build(span, &out).unwrap();
        self.runs = VebMap::build(span, &run_keys).unwrap();
        out
    }

    pub(crate) fn apply(&mut self, _t: &FiniteSemigroup, input: &[Change]) -> Vec<Change> {
        for &c in input {
            self.steps += 1;
            match c {
                Change::Set(k, l) => {
                    if self.w.contains(k) {
                        self.delete(k);
                    }
                    self.insert(k, l);
                }
                Change::Remove(k) => self.delete(k),
            }
        }
        let out = &self.out;
        self.outbox.drain(|k| out.retrieve(k))
    }

    fn remove_out(&mut self, key: usize) -> Elem {
        self.steps += 1;
        let old = self.out.delete(key).expect("output key present");
        self.outbox.touch(key, Some(old));
        if self.rees.coord[old].is_some() {
            self.runs.delete(key).unwrap();
        }
        old
    }

    fn put_out(&mut self, key: usize, label: Elem) {
        self.steps += 1;
        let before = self.out.retrieve(key);
        self.outbox.touch(key, before);
        let is_run = self.rees.coord[label].is_some();
        match before {
            Some(old) => {
                self.out.relabel(key, label).unwrap();
                match (self.rees.coord[old].is_some(), is_run) {
                    (false, true) => self.runs.insert(key, 0).unwrap(),
                    (true, false) => {
                        self.runs.delete(key).unwrap();
                    }
                    _ => {}
                }
            }
            None => {
                self.out.insert(key, label).unwrap();
                if is_run {
                    self.runs.insert(key, 0).unwrap();
                }
            }
        }
    }

    /// Mass of the distinct old runs at `keys`, removing them from the output.
    fn take_runs(&mut self, keys: &[usize]) -> usize {
        let mut mass = self.rees.gid;
        for (n, &k) in keys.iter().enumerate() {
            if keys[..n].contains(&k) {
                continue;
            }
            let old = self.remove_out(k);
            mass = self.rees.mul(mass, self.rees.coord[old].unwrap().1);
        }
        mass
    }

    /// Writes the new pieces, giving the first run all of `mass`. Leftover
    /// mass goes to any run of the word.
    fn emit(&mut self, pieces: &[Piece], mass: usize) {
        let mut mass = Some(mass);
        for p in pieces {
            match *p {
                Piece::Plain(k, l) => self.put_out(k, l),
                Piece::Run { key, i, j } => {
                    let g = mass.take().unwrap_or(self.rees.gid);
                    self.put_out(key, self.rees.elem(i, g, j));
                }
            }
        }
        if let Some(h) = mass.filter(|&h| h != self.rees.gid) {
            let r = self.runs.first().expect("non-trivial mass needs a run");
            let old = self.out.retrieve(r).unwrap();
            let (i, g, j) = self.rees.coord[old].unwrap();
            self.put_out(r, self.rees.elem(i, self.rees.mul(g, h), j));
        }
    }

    fn class_neighbors(&self, x: usize) -> (Option<(usize, Elem)>, Option<(usize, Elem)>) {
        let p = self.w.prev_before(x).map(|p| (p, self.w.retrieve(p).unwrap()));
        let q = self.w.next_after(x).map(|q| (q, self.w.retrieve(q).unwrap()));
        let in_class = |e: &(usize, Elem)| self.rees.coord[e.1].is_some();
        (p.filter(in_class), q.filter(in_class))
    }

    /// Left piece ending at `p` and right piece starting at `q`, read off
    /// their current runs: `(i of the run through p, key of that run)` and
    /// `(j of the run through q, key of that run)`.
    fn ends(&self, p: Option<(usize, Elem)>, q: Option<(usize, Elem)>) -> (Option<(usize, usize)>, Option<(usize, usize)>) {
        let left = p.map(|(p, _)| {
            let k = self.out.find_next(p).unwrap();
            (self.rees.coord[self.out.retrieve(k).unwrap()].unwrap().0, k)
        });
        let right = q.map(|(q, _)| {
            let k = self.out.find_next(q).unwrap();
            (self.rees.coord[self.out.retrieve(k).unwrap()].unwrap().2, k)
        });
        (left, right)
    }

    fn insert(&mut self, x: usize, label: Elem) {
        let (p, q) = self.class_neighbors(x);
        let (left, right) = self.ends(p, q);
        let r = &self.rees;
        let link = |a: Option<(usize, Elem)>, b: Option<(usize, Elem)>| match (a, b) {
            (Some((_, a)), Some((_, b))) => r.link(a, b),
            _ => None,
        };
        let xe = Some((x, label));
        let mut delta = r.gid;
        if let Some((_, g, _)) = r.coord[label] {
            delta = r.mul(delta, g);
        }
        for l in [link(p, xe), link(xe, q)].into_iter().flatten() {
            delta = r.mul(delta, l);
        }
        if let Some(l) = link(p, q) {
            delta = r.mul(delta, r.ginv[l]);
        }
        let joins_left = link(p, xe).is_some();
        let joins_right = link(xe, q).is_some();
        let x_coord = r.coord[label];

        let mut old = Vec::with_capacity(2);
        old.extend(left.map(|(_, k)| k));
        old.extend(right.map(|(_, k)| k));
        let mass = self.take_runs(&old);
        let mass = self.rees.mul(mass, delta);
        self.w.insert(x, label).unwrap();

        let mut pieces = Vec::with_capacity(3);
        match x_coord {
            None => {
                if let (Some((i, _)), Some((p, pl))) = (left, p) {
                    pieces.push(Piece::Run { key: p, i, j: self.rees.coord[pl].unwrap().2 });
                }
                pieces.push(Piece::Plain(x, label));
                if let (Some((j, k)), Some((_, ql))) = (right, q) {
                    pieces.push(Piece::Run { key: k, i: self.rees.coord[ql].unwrap().0, j });
                }
            }
            Some((xi, _, xj)) => {
                let mut i = xi;
                if let (Some((li, _)), Some((p, pl))) = (left, p) {
                    if joins_left {
                        i = li;
                    } else {
                        pieces.push(Piece::Run { key: p, i: li, j: self.rees.coord[pl].unwrap().2 });
                    }
                }
                match (right, q) {
                    (Some((rj, k)), Some((_, ql))) => {
                        if joins_right {
                            pieces.push(Piece::Run { key: k, i, j: rj });
                        } else {
                            pieces.push(Piece::Run { key: x, i, j: xj });
                            pieces.push(Piece::Run { key: k, i: self.rees.coord[ql].unwrap().0, j: rj });
                        }
                    }
                    _ => pieces.push(Piece::Run { key: x, i, j: xj }),
                }
            }
        }
        self.emit(&pieces, mass);
    }

    fn delete(&mut self, x: usize) {
        let label = self.w.retrieve(x).unwrap();
        let (p, q) = self.class_neighbors(x);
        let (left, right) = self.ends(p, q);
        let r = &self.rees;
        let link = |a: Option<(usize, Elem)>, b: Option<(usize, Elem)>| match (a, b) {
            (Some((_, a)), Some((_, b))) => r.link(a, b),
            _ => None,
        };
        let xe = Some((x, label));
        let mut removed = r.gid;
        if let Some((_, g, _)) = r.coord[label] {
            removed = r.mul(removed, g);
        }
        for l in [link(p, xe), link(xe, q)].into_iter().flatten() {
            removed = r.mul(removed, l);
        }
        let mut delta = r.ginv[removed];
        let bridge = link(p, q);
        if let Some(l) = bridge {
            delta = r.mul(delta, l);
        }
        let x_in_class = r.coord[label].is_some();

        let mut old = Vec::with_capacity(3);
        old.extend(left.map(|(_, k)| k));
        old.extend(right.map(|(_, k)| k));
        let mass = if x_in_class {
            old.push(self.out.find_next(x).unwrap());
            self.take_runs(&old)
        } else {
            self.remove_out(x);
            self.take_runs(&old)
        };
        let mass = self.rees.mul(mass, delta);
        self.w.delete(x).unwrap();

        let mut pieces = Vec::with_capacity(2);
        match (left, right) {
            (Some((li, _)), Some((rj, k))) if bridge.is_some() => pieces.push(Piece::Run { key: k, i: li, j: rj }),
            _ => {
                if let (Some((li, _)), Some((p, pl))) = (left, p) {
                    pieces.push(Piece::Run { key: p, i: li, j: self.rees.coord[pl].unwrap().2 });
                }
                if let (Some((rj, k)), Some((_, ql))) = (right, q) {
                    pieces.push(Piece::Run { key: k, i: self.rees.coord[ql].unwrap().0, j: rj });
                }
            }
        }
        self.emit(&pieces, mass);
    }
}
