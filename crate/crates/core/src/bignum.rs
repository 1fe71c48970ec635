//! Serializes arbitrary-precision counts as JSON numbers when they fit in a
//! `u64`, and as decimal strings otherwise.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serializer;

pub(crate) fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(x) => s.serialize_u64(x),
        None => s.serialize_str(&v.to_string()),
    }
}
