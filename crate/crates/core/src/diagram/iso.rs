use std::collections::BTreeSet;

use super::OrthoDiagram;

/// An atom bijection `pi` (`pi[a]` is the image of atom `a`) carrying the
/// contexts of `a` exactly onto those of `b`, if one exists.
pub fn isomorphism(a: &OrthoDiagram, b: &OrthoDiagram) -> Option<Vec<usize>> {
    if a.num_atoms() != b.num_atoms() || a.num_contexts() != b.num_contexts() {
        return None;
    }
    let profile = |d: &OrthoDiagram, x: usize| -> Vec<usize> {
        let mut sizes: Vec<usize> = d
            .contexts_of(x)
            .iter()
            .map(|&c| d.contexts()[c].len())
            .collect();
        sizes.sort_unstable();
        sizes
    };
    let pa: Vec<Vec<usize>> = (0..a.num_atoms()).map(|x| profile(a, x)).collect();
    let pb: Vec<Vec<usize>> = (0..b.num_atoms()).map(|x| profile(b, x)).collect();
    let target: BTreeSet<BTreeSet<usize>> = b
        .contexts()
        .iter()
        .map(|c| c.iter().copied().collect())
        .collect();

    struct Search<'x> {
        a: &'x OrthoDiagram,
        b: &'x OrthoDiagram,
        pa: &'x [Vec<usize>],
        pb: &'x [Vec<usize>],
        target: &'x BTreeSet<BTreeSet<usize>>,
        image: Vec<usize>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn go(&mut self, x: usize) -> bool {
            if x == self.image.len() {
                let mapped: BTreeSet<BTreeSet<usize>> = self
                    .a
                    .contexts()
                    .iter()
                    .map(|c| c.iter().map(|&y| self.image[y]).collect())
                    .collect();
                return &mapped == self.target;
            }
            for y in 0..self.used.len() {
                if self.used[y] || self.pa[x] != self.pb[y] {
                    continue;
                }
                let consistent = (0..x)
                    .all(|z| self.a.co_contextual(x, z) == self.b.co_contextual(y, self.image[z]));
                if !consistent {
                    continue;
                }
                self.used[y] = true;
                self.image[x] = y;
                if self.go(x + 1) {
                    return true;
                }
                self.used[y] = false;
            }
            false
        }
    }

    let n = a.num_atoms();
    let mut s = Search {
        a,
        b,
        pa: &pa,
        pb: &pb,
        target: &target,
        image: vec![usize::MAX; n],
        used: vec![false; n],
    };
    s.go(0).then_some(s.image)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(text: &str) -> OrthoDiagram {
        super::super::parse_diagram(text).unwrap()
    }

    #[test]
    fn relabelled_pentagon() {
        let p = d("1 2 3\n3 4 5\n5 6 7\n7 8 9\n9 10 1");
        let q = d("a b c\ng h i\nc d e\ni j a\ne f g");
        let pi = isomorphism(&p, &q).unwrap();
        for c in p.contexts() {
            let img: BTreeSet<usize> = c.iter().map(|&x| pi[x]).collect();
            assert!(q
                .contexts()
                .iter()
                .any(|k| k.iter().copied().collect::<BTreeSet<_>>() == img));
        }
    }

    #[test]
    fn different_shapes() {
        let triangle = d("1 2 3\n3 4 5\n5 6 1");
        let chain = d("1 2 3\n3 4 5\n5 6 7");
        assert!(isomorphism(&triangle, &chain).is_none());
        assert!(isomorphism(&d("a b c"), &d("a b")).is_none());
    }
}
