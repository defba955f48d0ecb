use std::fmt;

use super::PLMap;
use crate::exactnum::{Dyadic, Rat};
use crate::pwl::{Chain, Coord};

/// A connected component of a fixed-point set, with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum RawComponent {
    Point(Rat),
    Interval(Rat, Rat),
}

/// Components of `{t : f(t) = t}` for a chain whose source and target coincide.
///
/// Isolated crossings can be non-dyadic; intervals of fixed points always end at nodes.
pub(crate) fn diagonal_components<C: Coord>(chain: &Chain<C>) -> Vec<RawComponent> {
    let nodes = chain.nodes();
    let diff: Vec<Rat> = nodes.iter().map(|(x, y)| y.to_rat() - x.to_rat()).collect();
    let mut out: Vec<RawComponent> = Vec::new();
    let push_point = |out: &mut Vec<RawComponent>, p: Rat| {
        match out.last() {
            Some(RawComponent::Point(q)) if *q == p => {}
            Some(RawComponent::Interval(_, b)) if *b == p => {}
            _ => out.push(RawComponent::Point(p)),
        }
    };
    for i in 0..nodes.len() - 1 {
        let (d0, d1) = (&diff[i], &diff[i + 1]);
        let x0 = nodes[i].0.to_rat();
        if d0.is_zero() && d1.is_zero() {
            let x1 = nodes[i + 1].0.to_rat();
            let start = match out.last() {
                Some(RawComponent::Interval(a, b)) if *b == x0 => Some(a.clone()),
                Some(RawComponent::Point(p)) if *p == x0 => Some(p.clone()),
                _ => None,
            };
            match start {
                Some(a) => *out.last_mut().expect("non-empty") = RawComponent::Interval(a, x1),
                None => out.push(RawComponent::Interval(x0, x1)),
            }
            continue;
        }
        if d0.is_zero() {
            push_point(&mut out, x0);
        } else if (d0.is_negative() && d1.is_positive()) || (d0.is_positive() && d1.is_negative())
        {
            let x1 = nodes[i + 1].0.to_rat();
            let t = &x0 - &(&(d0 * &(&x1 - &x0)) / &(d1 - d0));
            out.push(RawComponent::Point(t));
        }
    }
    if diff[diff.len() - 1].is_zero() {
        push_point(&mut out, nodes[nodes.len() - 1].0.to_rat());
    }
    out
}

/// A component of D(f): an isolated fixed point (possibly non-dyadic) or a maximal interval of
/// fixed points (always with dyadic endpoints).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Component {
    Point(Rat),
    Interval(Dyadic, Dyadic),
}

/// The fixed-point set of an element, as ordered components.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FixedSet {
    components: Vec<Component>,
}

impl FixedSet {
    pub fn of(f: &PLMap) -> FixedSet {
        let components = diagonal_components(f.chain())
            .into_iter()
            .map(|c| match c {
                RawComponent::Point(p) => Component::Point(p),
                RawComponent::Interval(a, b) => Component::Interval(
                    a.to_dyadic().expect("fixed intervals end at nodes"),
                    b.to_dyadic().expect("fixed intervals end at nodes"),
                ),
            })
            .collect();
        FixedSet { components }
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// ∂D: isolated points together with the endpoints of fixed intervals, in order.
    pub fn boundary(&self) -> Vec<Rat> {
        let mut out = Vec::new();
        for c in &self.components {
            match c {
                Component::Point(p) => out.push(p.clone()),
                Component::Interval(a, b) => {
                    out.push(a.to_rat());
                    out.push(b.to_rat());
                }
            }
        }
        out
    }

    /// ∂₂D: the dyadic points of ∂D.
    pub fn dyadic_boundary(&self) -> Vec<Dyadic> {
        self.boundary().iter().filter_map(Rat::to_dyadic).collect()
    }

    pub fn contains(&self, t: &Rat) -> bool {
        self.components.iter().any(|c| match c {
            Component::Point(p) => p == t,
            Component::Interval(a, b) => a.to_rat() <= *t && *t <= b.to_rat(),
        })
    }
}

impl fmt::Display for FixedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match c {
                Component::Point(p) => write!(f, "{p}")?,
                Component::Interval(a, b) => write!(f, "[{a}, {b}]")?,
            }
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{x0, x1};

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn pl(pts: &[(&str, &str)]) -> PLMap {
        PLMap::new(pts.iter().map(|(x, y)| (d(x), d(y))).collect()).unwrap()
    }

    #[test]
    fn generators() {
        let f = x0().fixed_set();
        assert_eq!(f.components(), &[Component::Point(Rat::zero()), Component::Point(Rat::one())]);
        assert_eq!(f.dyadic_boundary(), vec![d("0"), d("1")]);
        let g = x1().fixed_set();
        assert_eq!(
            g.components(),
            &[Component::Interval(d("0"), d("1/2")), Component::Point(Rat::one())]
        );
        assert_eq!(g.dyadic_boundary(), vec![d("0"), d("1/2"), d("1")]);
    }

    #[test]
    fn non_dyadic_crossing() {
        let f = pl(&[("0", "0"), ("1/2", "1/4"), ("5/8", "3/4"), ("3/4", "7/8"), ("1", "1")]);
        let fs = f.fixed_set();
        assert_eq!(fs.boundary(), vec![Rat::zero(), Rat::new(7, 12), Rat::one()]);
        assert_eq!(fs.dyadic_boundary(), vec![d("0"), d("1")]);
        assert!(fs.contains(&Rat::new(7, 12)));
        assert!(!fs.contains(&Rat::new(1, 2)));
    }

    #[test]
    fn touching_and_trailing_interval() {
        let f = pl(&[
            ("0", "0"),
            ("1/2", "1/4"),
            ("3/4", "3/4"),
            ("7/8", "13/16"),
            ("15/16", "15/16"),
            ("1", "1"),
        ]);
        let fs = f.fixed_set();
        assert_eq!(
            fs.components(),
            &[
                Component::Point(Rat::zero()),
                Component::Point(Rat::new(3, 4)),
                Component::Interval(d("15/16"), d("1")),
            ]
        );
        assert_eq!(fs.dyadic_boundary(), vec![d("0"), d("3/4"), d("15/16"), d("1")]);
        assert_eq!(PLMap::identity_unit().fixed_set().dyadic_boundary(), vec![d("0"), d("1")]);
    }
}
