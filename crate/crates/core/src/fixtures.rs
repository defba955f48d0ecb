//! The standard generators and a small word language over them.
//!
//! Words are read as compositions: `x0 x1` is `x0 ∘ x1`, so the rightmost letter acts first.
//! `xn` abbreviates `x0^-(n-1) x1 x0^(n-1)`, which is supported on `[1 - 2^-n, 1]`.

use crate::error::{Error, Result};
use crate::exactnum::Dyadic;
use crate::plmap::PLMap;

fn build(pts: &[(i64, i64, i64, i64)]) -> PLMap {
    PLMap::new(
        pts.iter()
            .map(|&(a, ea, b, eb)| (Dyadic::new(a, ea), Dyadic::new(b, eb)))
            .collect(),
    )
    .expect("fixture is valid")
}

pub fn x0() -> PLMap {
    build(&[(0, 0, 0, 0), (1, 1, 1, 2), (3, 2, 1, 1), (1, 0, 1, 0)])
}

pub fn x1() -> PLMap {
    build(&[(0, 0, 0, 0), (1, 1, 1, 1), (3, 2, 5, 3), (7, 3, 3, 2), (1, 0, 1, 0)])
}

pub fn xn(n: u32) -> PLMap {
    match n {
        0 => x0(),
        _ => {
            let s = x0().power(n as i64 - 1);
            s.invert().compose(&x1()).and_then(|g| g.compose(&s)).expect("same domain")
        }
    }
}

/// Parses a word such as `x0 x1^-1 x3^2` (also accepting `*` or `.` as separators).
pub fn parse_word(src: &str) -> Result<PLMap> {
    let mut acc = PLMap::identity_unit();
    let mut pos = 0;
    for tok in src.split(|c: char| c.is_whitespace() || c == '*' || c == '.') {
        if tok.is_empty() {
            pos += 1;
            continue;
        }
        let err = |msg: &str| Error::Parse { pos, msg: format!("{msg}: {tok:?}") };
        let body = tok.strip_prefix('x').ok_or_else(|| err("expected a generator xN"))?;
        let (idx, exp) = match body.split_once('^') {
            Some((i, e)) => (i, e.parse::<i64>().map_err(|_| err("bad exponent"))?),
            None => (body, 1),
        };
        let n: u32 = idx.parse().map_err(|_| err("bad generator index"))?;
        if n > 64 {
            return Err(err("generator index too large"));
        }
        acc = acc.compose(&xn(n).power(exp))?;
        pos += tok.len() + 1;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn generator_supports() {
        assert_eq!(x1().eval_dyadic(&d("3/4")), d("5/8"));
        let x2 = xn(2);
        assert_eq!(x2.fixed_set().dyadic_boundary(), vec![d("0"), d("3/4"), d("1")]);
        assert_eq!(xn(1), x1());
    }

    #[test]
    fn words() {
        assert_eq!(parse_word("x0 x0^-1").unwrap(), PLMap::identity_unit());
        assert_eq!(parse_word("x0^2").unwrap(), x0().power(2));
        assert_eq!(parse_word("x0*x1").unwrap(), x0().compose(&x1()).unwrap());
        assert_eq!(parse_word("").unwrap(), PLMap::identity_unit());
        let lhs = parse_word("x0^-1 x2 x0").unwrap();
        assert_eq!(lhs, xn(3));
        assert!(matches!(parse_word("y1"), Err(Error::Parse { .. })));
        assert!(parse_word("x1^a").is_err());
    }

    #[test]
    fn presentation_relations() {
        // x_n x_k = x_k x_{n+1} for k < n.
        for n in 1..6 {
            for k in 0..n {
                let lhs = xn(n).compose(&xn(k)).unwrap();
                let rhs = xn(k).compose(&xn(n + 1)).unwrap();
                assert_eq!(lhs, rhs, "n = {n}, k = {k}");
            }
        }
    }
}
