use crate::repr::Formula;
use crate::system::{Network, System};

/// Vertex layout of an `h`-amplifier: `a_r = r`, `b_r = h+1+r`, `c_r = 2(h+1)+r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Amplifier {
    pub h: usize,
}

impl Amplifier {
    pub fn new(h: usize) -> Self {
        Amplifier { h }
    }

    pub fn vertex_count(self) -> usize {
        3 * (self.h + 1)
    }

    pub fn a(self, r: usize) -> usize {
        r
    }

    pub fn b(self, r: usize) -> usize {
        self.h + 1 + r
    }

    pub fn c(self, r: usize) -> usize {
        2 * (self.h + 1) + r
    }

    /// Edges `{a_r, b_r}`, `{c_r, b_r}`, `{a_r, a_(r-1)}`, `{c_r, c_(r-1)}`.
    pub fn edges(self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(4 * self.h + 2);
        for r in 0..=self.h {
            out.push((self.a(r), self.b(r)));
            out.push((self.c(r), self.b(r)));
            if r > 0 {
                out.push((self.a(r), self.a(r - 1)));
                out.push((self.c(r), self.c(r - 1)));
            }
        }
        out
    }

    /// Functions as vertex formulas, each a single majority:
    /// `a_0`, `c_0` keep their value, `a_r`, `c_r` copy their predecessor and
    /// `b_r = maj(b_r, a_r, c_r)`.
    pub fn vertex_formulas(self) -> Vec<(usize, Formula)> {
        let copy = |v: usize| Formula::maj(Formula::Var(v), Formula::Var(v), Formula::Var(v));
        let mut out = Vec::with_capacity(self.vertex_count());
        for r in 0..=self.h {
            let (a, c) = if r == 0 {
                (self.a(0), self.c(0))
            } else {
                (self.a(r - 1), self.c(r - 1))
            };
            out.push((self.a(r), copy(a)));
            out.push((self.c(r), copy(c)));
            out.push((
                self.b(r),
                Formula::maj(
                    Formula::Var(self.b(r)),
                    Formula::Var(self.a(r)),
                    Formula::Var(self.c(r)),
                ),
            ));
        }
        out.sort_by_key(|(v, _)| *v);
        out
    }

    pub fn system(self) -> System {
        let g =
            Network::new(self.vertex_count(), self.edges()).expect("amplifier edges are simple");
        let formulas = self.vertex_formulas().into_iter().map(|(_, f)| f).collect();
        System::from_vertex_formulas(g, formulas).expect("formulas stay in scope")
    }
}

/// The `h`-amplifier system.
pub fn amplifier(h: usize) -> System {
    Amplifier::new(h).system()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::count_brute;
    use crate::graph::is_planar;
    use num_bigint::BigUint;

    #[test]
    fn shape() {
        let amp = Amplifier::new(2);
        let s = amp.system();
        assert_eq!(s.vertex_count(), 9);
        assert_eq!(s.network().edge_count(), 10);
        assert!(is_planar(s.network()));
        assert_eq!(s.scope(amp.b(1)), &[amp.a(1), amp.b(1), amp.c(1)]);
    }

    #[test]
    fn total_count() {
        // two agreeing anchor pairs contribute one each, two disagreeing ones 2^(h+1)
        for h in 0..4 {
            let expected = 2 + 2 * (1u64 << (h + 1));
            assert_eq!(
                count_brute(&amplifier(h), 26).unwrap(),
                BigUint::from(expected)
            );
        }
    }
}
