//! Stable 64-bit digests of algorithm outputs, for cross-run and
//! cross-container comparison.

use std::hash::Hasher;

const OFFSET_BASIS: u64 = 0xcbf2_9ce4_8422_2325;
const PRIME: u64 = 0x0000_0100_0000_01b3;

/// FNV-1a over little-endian encodings. Unlike `DefaultHasher` the result is
/// fixed across platforms and releases.
#[derive(Clone, Debug)]
pub struct Fnv64(u64);

impl Default for Fnv64 {
    fn default() -> Self {
        Fnv64(OFFSET_BASIS)
    }
}

impl Fnv64 {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn write_tag(&mut self, tag: &str) {
        self.write_u64(tag.len() as u64);
        self.write(tag.as_bytes());
    }

    /// Hashes `x` rounded to the nearest multiple of 1e-9.
    pub fn write_f64_rounded(&mut self, x: f64) {
        self.write_i64((x * 1e9).round() as i64);
    }

    pub fn write_u32_slice(&mut self, xs: &[u32]) {
        self.write_u64(xs.len() as u64);
        for &x in xs {
            self.write_u32(x);
        }
    }
}

impl Hasher for Fnv64 {
    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(PRIME);
        }
    }

    fn write_u32(&mut self, x: u32) {
        self.write(&x.to_le_bytes());
    }

    fn write_u64(&mut self, x: u64) {
        self.write(&x.to_le_bytes());
    }

    fn write_i64(&mut self, x: i64) {
        self.write(&x.to_le_bytes());
    }

    fn finish(&self) -> u64 {
        self.0
    }
}
