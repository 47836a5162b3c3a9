//! Known sequence prefixes used as hermetic fixtures.

pub const MAX_N: u32 = 12;

/// OEIS A000110 (Bell numbers), terms n = 0..=12.
pub const A000110: [u64; 13] = [
    1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570, 4213597,
];

/// OEIS A000262 (sets of lists), terms n = 0..=12.
pub const A000262: [u64; 13] = [
    1,
    1,
    3,
    13,
    73,
    501,
    4051,
    37633,
    394353,
    4596553,
    58941091,
    824073141,
    12470162233,
];
