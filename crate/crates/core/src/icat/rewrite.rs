//! String rewriting with shortlex-oriented Knuth–Bendix completion.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};

use serde::Serialize;

pub type Word = Vec<u32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Completion {
    /// the rules are confluent: normal forms decide equality
    Confluent,
    /// the budget ran out; rules are sound but maybe not confluent
    Budget,
}

#[derive(Clone, Debug, Default)]
pub struct RewriteSystem {
    pub rules: Vec<(Word, Word)>,
}

fn shortlex(a: &[u32], b: &[u32]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn find(hay: &[u32], needle: &[u32]) -> Option<usize> {
    if needle.is_empty() || needle.len() > hay.len() {
        return None;
    }
    (0..=hay.len() - needle.len()).find(|&i| &hay[i..i + needle.len()] == needle)
}

impl RewriteSystem {
    /// Rewrite to an irreducible word, leftmost match first.
    pub fn reduce(&self, w: &[u32]) -> Word {
        let mut w = w.to_vec();
        'outer: loop {
            for (l, r) in &self.rules {
                if let Some(i) = find(&w, l) {
                    w.splice(i..i + l.len(), r.iter().copied());
                    continue 'outer;
                }
            }
            return w;
        }
    }

    /// True if no rule applies to `w`.
    pub fn is_irreducible(&self, w: &[u32]) -> bool {
        self.rules.iter().all(|(l, _)| find(w, l).is_none())
    }

    /// True if no left side is a suffix of `w`: enough to keep `w`
    /// irreducible after extending an irreducible prefix.
    pub fn suffix_irreducible(&self, w: &[u32]) -> bool {
        self.rules.iter().all(|(l, _)| !w.ends_with(l))
    }

    /// Complete the given equations; `budget` bounds the number of
    /// equations processed.
    pub fn complete(equations: &[(Word, Word)], budget: u64) -> (RewriteSystem, Completion) {
        let mut sys = RewriteSystem::default();
        let mut ids: Vec<u64> = Vec::new();
        let mut next_id = 0u64;
        let mut queue: VecDeque<(Word, Word)> = equations.iter().cloned().collect();
        let mut done_pairs: HashSet<(u64, u64)> = HashSet::new();
        let mut spent = 0u64;
        loop {
            while let Some((a, b)) = queue.pop_front() {
                spent += 1;
                if spent > budget {
                    return (sys, Completion::Budget);
                }
                let (a, b) = (sys.reduce(&a), sys.reduce(&b));
                let (l, r) = match shortlex(&a, &b) {
                    Ordering::Equal => continue,
                    Ordering::Greater => (a, b),
                    Ordering::Less => (b, a),
                };
                let mut kept = Vec::new();
                let mut kept_ids = Vec::new();
                for ((l2, r2), id) in sys.rules.drain(..).zip(ids.drain(..)) {
                    if find(&l2, &l).is_some() {
                        queue.push_back((l2, r2));
                    } else {
                        kept.push((l2, r2));
                        kept_ids.push(id);
                    }
                }
                kept.push((l, r));
                kept_ids.push(next_id);
                next_id += 1;
                sys.rules = kept;
                ids = kept_ids;
                for i in 0..sys.rules.len() {
                    let r = sys.reduce(&sys.rules[i].1);
                    sys.rules[i].1 = r;
                }
            }
            let mut found = false;
            for i in 0..sys.rules.len() {
                for j in 0..sys.rules.len() {
                    if !done_pairs.insert((ids[i], ids[j])) {
                        continue;
                    }
                    let (l1, r1) = &sys.rules[i];
                    let (l2, r2) = &sys.rules[j];
                    for k in 1..l1.len().min(l2.len()) {
                        if l1[l1.len() - k..] != l2[..k] {
                            continue;
                        }
                        let mut x = r1.clone();
                        x.extend_from_slice(&l2[k..]);
                        let mut y = l1[..l1.len() - k].to_vec();
                        y.extend_from_slice(r2);
                        let (x, y) = (sys.reduce(&x), sys.reduce(&y));
                        if x != y {
                            queue.push_back((x, y));
                            found = true;
                        }
                    }
                }
            }
            if !found && queue.is_empty() {
                return (sys, Completion::Confluent);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn completes_a_commutative_square() {
        // a b = c d in the free category on a square
        let (sys, status) = RewriteSystem::complete(&[(vec![0, 1], vec![2, 3])], 100);
        assert_eq!(status, Completion::Confluent);
        assert_eq!(sys.reduce(&[2, 3]), sys.reduce(&[0, 1]));
        assert_ne!(sys.reduce(&[0]), sys.reduce(&[2]));
    }

    #[test]
    fn inverse_pair() {
        // a b = 1 and b a = 1
        let (sys, status) = RewriteSystem::complete(&[(vec![0, 1], vec![]), (vec![1, 0], vec![])], 100);
        assert_eq!(status, Completion::Confluent);
        assert_eq!(sys.reduce(&[0, 1, 0, 1, 0]), vec![0]);
    }

    #[test]
    fn overlaps_produce_new_rules() {
        // aa = a, ab = b: critical pair on aab
        let (sys, status) = RewriteSystem::complete(&[(vec![0, 0], vec![0]), (vec![0, 1], vec![1])], 100);
        assert_eq!(status, Completion::Confluent);
        assert_eq!(sys.reduce(&[0, 0, 0, 1]), vec![1]);
    }
}
