//! Multifunctions on finite sets, evaluated by their literal definitions.

/// A multifunction on a finite source: each point carries a finite list of
/// eligible values. The domain is the set of points with a nonempty list.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteMultifunction<X, Y> {
    assign: Vec<(X, Vec<Y>)>,
}

impl<X: PartialEq + Clone, Y: PartialEq + Clone> FiniteMultifunction<X, Y> {
    /// Later entries for an already listed point are ignored.
    pub fn new(assign: Vec<(X, Vec<Y>)>) -> Self {
        FiniteMultifunction { assign }
    }

    /// The multifunction `{x ↦ {f(x)}}` on the points where `f` is defined;
    /// other points get the empty set.
    pub fn from_partial(source: &[X], f: impl Fn(&X) -> Option<Y>) -> Self {
        FiniteMultifunction::new(source.iter().map(|x| (x.clone(), f(x).into_iter().collect())).collect())
    }

    pub fn source(&self) -> Vec<X> {
        self.assign.iter().map(|(x, _)| x.clone()).collect()
    }

    /// `F(x)`, empty for points outside the source.
    pub fn values(&self, x: &X) -> &[Y] {
        self.assign
            .iter()
            .find(|(p, _)| p == x)
            .map_or(&[], |(_, ys)| ys.as_slice())
    }

    pub fn in_domain(&self, x: &X) -> bool {
        !self.values(x).is_empty()
    }

    pub fn domain(&self) -> Vec<X> {
        let mut dom: Vec<X> = Vec::new();
        for (x, ys) in &self.assign {
            if !ys.is_empty() && !dom.contains(x) && self.values(x) == ys.as_slice() {
                dom.push(x.clone());
            }
        }
        dom
    }
}

fn subset<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    a.iter().all(|x| b.contains(x))
}

/// `F ≺ G`: `dom(G) ⊆ dom(F)` and `F(x) ⊆ G(x)` for `x ∈ dom(G)`.
pub fn tightens<X, Y>(f: &FiniteMultifunction<X, Y>, g: &FiniteMultifunction<X, Y>) -> bool
where
    X: PartialEq + Clone,
    Y: PartialEq + Clone,
{
    g.domain().iter().all(|x| f.in_domain(x) && subset(f.values(x), g.values(x)))
}

/// `F ∘ G` with `(F ∘ G)(x) = {z | G(x) ⊆ dom(F) ∧ ∃y ∈ G(x): z ∈ F(y)}`,
/// listed in order of first appearance. Its source is that of `G`.
pub fn mf_compose<X, Y, Z>(f: &FiniteMultifunction<Y, Z>, g: &FiniteMultifunction<X, Y>) -> FiniteMultifunction<X, Z>
where
    X: PartialEq + Clone,
    Y: PartialEq + Clone,
    Z: PartialEq + Clone,
{
    let assign = g
        .source()
        .into_iter()
        .map(|x| {
            let ys = g.values(&x);
            let mut zs: Vec<Z> = Vec::new();
            if ys.iter().all(|y| f.in_domain(y)) {
                for z in ys.iter().flat_map(|y| f.values(y)) {
                    if !zs.contains(z) {
                        zs.push(z.clone());
                    }
                }
            }
            (x, zs)
        })
        .collect();
    FiniteMultifunction::new(assign)
}

/// `f` chooses through `F`: for every `x ∈ dom(F)`, `f(x)` is defined and
/// lies in `F(x)`.
pub fn chooses_through<X, Y>(f: impl Fn(&X) -> Option<Y>, mf: &FiniteMultifunction<X, Y>) -> bool
where
    X: PartialEq + Clone,
    Y: PartialEq + Clone,
{
    mf.domain()
        .iter()
        .all(|x| f(x).is_some_and(|y| mf.values(x).contains(&y)))
}

#[cfg(test)]
mod tests {
    use super::*;

    type Mf = FiniteMultifunction<u8, char>;

    #[test]
    fn reflexive_and_sub_assignment() {
        let g = Mf::new(vec![(0, vec!['a', 'b']), (1, vec!['a'])]);
        assert!(tightens(&g, &g));
        let f = Mf::new(vec![(0, vec!['a']), (1, vec!['a']), (2, vec!['b'])]);
        assert!(tightens(&f, &g));
        assert!(!tightens(&g, &f));
    }

    #[test]
    fn composition_guard_excludes_partially_defined_images() {
        // G(0) = {0, 1} but 1 ∉ dom(F), so 0 ∉ dom(F ∘ G) even though F(0) ≠ ∅
        let g: FiniteMultifunction<u8, u8> = FiniteMultifunction::new(vec![(0, vec![0, 1]), (1, vec![0]), (2, vec![])]);
        let f: FiniteMultifunction<u8, char> = FiniteMultifunction::new(vec![(0, vec!['z']), (1, vec![]), (2, vec!['y'])]);
        let fg = mf_compose(&f, &g);
        assert!(!fg.in_domain(&0));
        assert_eq!(fg.values(&1), &['z']);
        assert!(!fg.in_domain(&2));
        assert_eq!(fg.domain(), vec![1]);
    }

    #[test]
    fn choice_functions() {
        let mf = Mf::new(vec![(0, vec!['a', 'b']), (1, vec![]), (2, vec!['c'])]);
        assert!(chooses_through(|x: &u8| [Some('b'), None, Some('c')][*x as usize], &mf));
        assert!(!chooses_through(|x: &u8| [Some('b'), None, None][*x as usize], &mf));
        assert!(!chooses_through(|x: &u8| [Some('c'), None, Some('c')][*x as usize], &mf));
        let f = |x: &u8| [Some('a'), Some('q'), Some('c')][*x as usize];
        let as_mf = FiniteMultifunction::from_partial(&[0, 1, 2], f);
        assert_eq!(tightens(&as_mf, &mf), chooses_through(f, &mf));
    }

    #[test]
    fn duplicate_source_entries_use_the_first() {
        let mf = Mf::new(vec![(0, vec![]), (0, vec!['a'])]);
        assert!(!mf.in_domain(&0));
        assert!(mf.domain().is_empty());
    }
}
