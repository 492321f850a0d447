use num_bigint::BigUint;

use crate::error::{Error, Result};

/// `(280k)^⌈(2−ε)/ε⌉` for `ε = num/den` in `(0, 1]`.
pub fn compute_p(k: u64, num: u64, den: u64) -> Result<BigUint> {
    if num == 0 || den == 0 || num > den {
        return Err(Error::InvalidArgument(format!(
            "epsilon {num}/{den} not in (0, 1]"
        )));
    }
    // (2 - num/den) / (num/den) = (2 den - num) / num
    let exponent = (2 * den - num).div_ceil(num);
    let exponent =
        u32::try_from(exponent).map_err(|_| Error::InvalidArgument("exponent too large".into()))?;
    Ok(BigUint::from(280 * k).pow(exponent))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(compute_p(1, 1, 1).unwrap(), BigUint::from(280u32));
        assert_eq!(compute_p(2, 1, 1).unwrap(), BigUint::from(560u32));
        assert_eq!(compute_p(1, 1, 2).unwrap(), BigUint::from(21_952_000u32));
        assert_eq!(compute_p(1, 1, 3).unwrap(), BigUint::from(280u32).pow(5));
        assert!(compute_p(1, 0, 1).is_err());
        assert!(compute_p(1, 3, 2).is_err());
    }
}
