use super::PLMap;
use crate::exactnum::{Dyadic, Pow2};
use crate::pwl::{Chain, Coord};

/// A common linearity region at an end of the domain: both maps equal
/// `t -> anchor + slope (t - anchor)` between `anchor` and `extent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearityBox {
    pub anchor: Dyadic,
    pub extent: Dyadic,
    pub slope: Pow2,
}

/// End of the common initial linear segment of two chains on the same interval, if the initial
/// slopes agree and differ from 1.
pub(crate) fn initial_extent<C: Coord>(y: &Chain<C>, z: &Chain<C>) -> Option<(C, Pow2)> {
    let s = y.first_slope();
    if s != z.first_slope() || s.is_one() {
        return None;
    }
    Some((y.nodes()[1].0.clone().min(z.nodes()[1].0.clone()), s))
}

/// Start of the common final linear segment, mirror image of [`initial_extent`].
pub(crate) fn final_extent<C: Coord>(y: &Chain<C>, z: &Chain<C>) -> Option<(C, Pow2)> {
    let s = y.last_slope();
    if s != z.last_slope() || s.is_one() {
        return None;
    }
    let (ny, nz) = (y.nodes(), z.nodes());
    Some((ny[ny.len() - 2].0.clone().max(nz[nz.len() - 2].0.clone()), s))
}

pub fn initial_box(y: &PLMap, z: &PLMap) -> Option<LinearityBox> {
    if y.domain() != z.domain() {
        return None;
    }
    let (extent, slope) = initial_extent(y.chain(), z.chain())?;
    Some(LinearityBox { anchor: y.lo().clone(), extent, slope })
}

pub fn final_box(y: &PLMap, z: &PLMap) -> Option<LinearityBox> {
    if y.domain() != z.domain() {
        return None;
    }
    let (extent, slope) = final_extent(y.chain(), z.chain())?;
    Some(LinearityBox { anchor: y.hi().clone(), extent, slope })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{x0, x1};

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn boxes_of_generators() {
        let b = initial_box(&x0(), &x0()).unwrap();
        assert_eq!((b.anchor, b.extent, b.slope), (d("0"), d("1/2"), Pow2::new(-1)));
        let f = final_box(&x0(), &x0()).unwrap();
        assert_eq!((f.anchor, f.extent, f.slope), (d("1"), d("3/4"), Pow2::new(1)));
        // x1 is the identity near 0.
        assert!(initial_box(&x1(), &x1()).is_none());
        let sq = x0().power(2);
        assert!(initial_box(&x0(), &sq).is_none());
        let conj = x0().conjugate_by(&x1()).unwrap();
        let b = initial_box(&x0(), &conj).unwrap();
        assert_eq!(b.extent, d("1/2"));
    }
}
