//! Binary indexed tree over 1-based slots, used for rank queries and
//! order-statistic selection in O(log n).

#[derive(Debug, Clone)]
pub(crate) struct Fenwick {
    tree: Vec<u32>,
    log: usize,
}

impl Fenwick {
    pub(crate) fn new(n: usize) -> Self {
        let mut log = 0;
        while (1usize << (log + 1)) <= n {
            log += 1;
        }
        Fenwick { tree: vec![0; n + 1], log }
    }

    /// Every slot 1..=n holds one element.
    pub(crate) fn full(n: usize) -> Self {
        let mut f = Self::new(n);
        for i in 1..=n {
            f.tree[i] += 1;
            let parent = i + (i & i.wrapping_neg());
            if parent <= n {
                let v = f.tree[i];
                f.tree[parent] += v;
            }
        }
        f
    }

    pub(crate) fn add(&mut self, mut i: usize, delta: i32) {
        while i < self.tree.len() {
            self.tree[i] = (self.tree[i] as i64 + delta as i64) as u32;
            i += i & i.wrapping_neg();
        }
    }

    /// Number of elements in slots 1..=i.
    pub(crate) fn prefix(&self, mut i: usize) -> u32 {
        let mut s = 0;
        while i > 0 {
            s += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        s
    }

    /// Smallest slot whose prefix count reaches `k` (k >= 1).
    pub(crate) fn kth(&self, mut k: u32) -> usize {
        let mut pos = 0;
        let mut step = 1usize << self.log;
        while step > 0 {
            let next = pos + step;
            if next < self.tree.len() && self.tree[next] < k {
                pos = next;
                k -= self.tree[next];
            }
            step >>= 1;
        }
        pos + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kth_and_prefix_agree_with_naive() {
        let mut f = Fenwick::full(13);
        let mut present: Vec<usize> = (1..=13).collect();
        for remove in [4usize, 13, 1, 7] {
            f.add(remove, -1);
            present.retain(|&x| x != remove);
        }
        for (k, &x) in present.iter().enumerate() {
            assert_eq!(f.kth(k as u32 + 1), x);
        }
        for i in 0..=13 {
            assert_eq!(f.prefix(i) as usize, present.iter().filter(|&&x| x <= i).count());
        }
    }
}
