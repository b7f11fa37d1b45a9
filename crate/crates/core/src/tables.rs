//! Literal transcriptions of the two published numbering tables.
//!
//! Every component is stored multiplied by `sqrt(3)`. The `sqrt(3)` entries of
//! the four computational states are written as `i sqrt(3) = 1 + 2w`, which
//! spans the same ray and keeps everything inside `Z[w]`.

use crate::arith::{EisVec4, EisensteinInt as E};

const O: E = E::new(0, 0);
const P: E = E::new(1, 0);
const M: E = E::new(-1, 0);
const W: E = E::new(0, 1);
const MW: E = E::new(0, -1);
/// `conj(w) = w^2 = -1 - w`
const WB: E = E::new(-1, -1);
/// `-conj(w) = 1 + w`
const MWB: E = E::new(1, 1);
const S3: E = E::I_SQRT3;

/// "Block" numbering, indexed `[row][column]`.
pub const BLOCK_TABLE: [[EisVec4; 4]; 10] = [
    [[S3, O, O, O], [O, S3, O, O], [O, O, S3, O], [O, O, O, S3]],
    [[O, P, M, P], [P, O, M, M], [P, M, O, P], [P, P, P, O]],
    [[O, P, MW, WB], [P, O, MW, MWB], [P, MW, O, WB], [P, W, WB, O]],
    [[O, P, MWB, W], [P, O, MWB, MW], [P, MWB, O, W], [P, WB, W, O]],
    [[O, P, MW, P], [P, O, M, MW], [P, MWB, O, WB], [P, W, P, O]],
    [[O, P, MWB, WB], [P, O, MW, M], [P, M, O, W], [P, WB, WB, O]],
    [[O, P, M, W], [P, O, MWB, MWB], [P, MW, O, P], [P, P, W, O]],
    [[O, P, MWB, P], [P, O, M, MWB], [P, MW, O, W], [P, WB, P, O]],
    [[O, P, M, WB], [P, O, MW, MW], [P, MWB, O, P], [P, P, WB, O]],
    [[O, P, MW, W], [P, O, MWB, M], [P, M, O, WB], [P, W, W, O]],
];

/// "Quantum card" numbering, indexed `[rank - 1][suit]` with suits in the
/// order spades, hearts, diamonds, clubs. The second field is the bracketed
/// block row printed next to each entry.
pub const CARD_TABLE: [[(EisVec4, usize); 4]; 10] = [
    [
        ([S3, O, O, O], 0),
        ([O, S3, O, O], 0),
        ([O, O, S3, O], 0),
        ([O, O, O, S3], 0),
    ],
    [
        ([O, P, M, P], 1),
        ([P, O, M, M], 1),
        ([P, M, O, P], 1),
        ([P, P, P, O], 1),
    ],
    [
        ([O, P, MW, WB], 2),
        ([P, O, MWB, M], 9),
        ([P, MW, O, P], 6),
        ([P, W, WB, O], 2),
    ],
    [
        ([O, P, MWB, W], 3),
        ([P, O, MW, M], 5),
        ([P, MWB, O, P], 8),
        ([P, WB, W, O], 3),
    ],
    [
        ([O, P, M, W], 6),
        ([P, O, MW, MWB], 2),
        ([P, MW, O, WB], 2),
        ([P, W, W, O], 9),
    ],
    [
        ([O, P, MW, P], 4),
        ([P, O, M, MWB], 7),
        ([P, MWB, O, WB], 4),
        ([P, WB, P, O], 7),
    ],
    [
        ([O, P, MWB, WB], 5),
        ([P, O, MWB, MWB], 6),
        ([P, M, O, WB], 9),
        ([P, P, WB, O], 8),
    ],
    [
        ([O, P, M, WB], 8),
        ([P, O, MWB, MW], 3),
        ([P, MWB, O, W], 3),
        ([P, WB, WB, O], 5),
    ],
    [
        ([O, P, MW, W], 9),
        ([P, O, MW, MW], 8),
        ([P, M, O, W], 5),
        ([P, P, W, O], 6),
    ],
    [
        ([O, P, MWB, P], 7),
        ([P, O, M, MW], 4),
        ([P, MW, O, W], 7),
        ([P, W, P, O], 4),
    ],
];

/// Rank involution relating the card table to its complex conjugate.
pub const CONJUGATE_RANK: [u8; 10] = [1, 2, 4, 3, 8, 10, 9, 5, 7, 6];

/// The 40 rays from their closed form: the four coordinate axes and four
/// families of nine, `(0,1,-w^m,w^n)`, `(1,0,-w^m,-w^n)`, `(1,-w^m,0,w^n)`,
/// `(1,w^m,w^n,0)`, all scaled by `sqrt(3)`.
pub fn generated_rays() -> Vec<EisVec4> {
    let pow = [P, W, WB];
    let mut out = Vec::with_capacity(40);
    for k in 0..4 {
        let mut v = [O; 4];
        v[k] = S3;
        out.push(v);
    }
    for m in pow {
        for n in pow {
            out.push([O, P, -m, n]);
            out.push([P, O, -m, -n]);
            out.push([P, -m, O, n]);
            out.push([P, m, n, O]);
        }
    }
    out
}
