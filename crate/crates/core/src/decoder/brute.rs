use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ffield::Fe;
use crate::linalg::index_to_vec;
use crate::rscode::{distance, RSCode};

/// The exact set `{c ∈ C : d(c, y) ≤ t}` by enumerating all `q^k`
/// messages, in message order.
pub fn brute_force_bdd(code: &RSCode, y: &[Fe], t: usize, limit: u128) -> Result<Vec<Vec<Fe>>> {
    if y.len() != code.n() {
        return Err(Error::LengthMismatch { expected: code.n(), got: y.len() });
    }
    let q = code.field().q();
    let size = (q as u128).pow(code.k() as u32);
    if size > limit {
        return Err(Error::CodeTooLarge { size, limit });
    }
    let g = code.generator_matrix();
    let f = &**code.field();
    Ok((0..size as u64)
        .into_par_iter()
        .filter_map(|i| {
            let m = index_to_vec(q, code.k(), i);
            let c = crate::linalg::vec_mul(f, &m, &g).expect("length k");
            (distance(&c, y).expect("length n") <= t).then_some(c)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::field_of_order;
    use crate::rscode::ENUMERATION_LIMIT;

    #[test]
    fn extremes_and_recount() {
        let code = RSCode::full_support(field_of_order(4).unwrap(), 2).unwrap();
        let y = vec![Fe(1), Fe(3), Fe(0), Fe(2)];
        assert_eq!(brute_force_bdd(&code, &y, 4, ENUMERATION_LIMIT).unwrap().len(), 16);
        let c = code.encode_message(&[Fe(2), Fe(3)]).unwrap();
        assert_eq!(brute_force_bdd(&code, &c, 0, ENUMERATION_LIMIT).unwrap(), vec![c]);
        // independent nested-loop recount over message coefficients
        let mut count = 0;
        for m0 in 0..4 {
            for m1 in 0..4 {
                let c = code.encode_message(&[Fe(m0), Fe(m1)]).unwrap();
                if distance(&c, &y).unwrap() <= 1 {
                    count += 1;
                }
            }
        }
        assert_eq!(brute_force_bdd(&code, &y, 1, ENUMERATION_LIMIT).unwrap().len(), count);
        assert!(matches!(brute_force_bdd(&code, &y, 1, 15), Err(Error::CodeTooLarge { .. })));
    }
}
