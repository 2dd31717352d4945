use super::descriptor::DescriptorError;

/// The split-model Weil pairing on `μ_n × Z/n`, written additively.
///
/// A point `(a1, a2)` has `μ_n`-exponent `a1` (after fixing a primitive root)
/// and tropical class `a2`; the pairing `a^Trop(b) b^-Trop(a)` becomes
/// `a1 b2 - b1 a2 mod n`.
pub fn weil_pairing_split(n: u64, a: (i64, i64), b: (i64, i64)) -> Result<u64, DescriptorError> {
    if n == 0 {
        return Err(DescriptorError::ZeroModulus);
    }
    let m = n as i128;
    let r = |x: i64| (x as i128).rem_euclid(m);
    let value = (r(a.0) * r(b.1) - r(b.0) * r(a.1)).rem_euclid(m);
    Ok(value as u64)
}
