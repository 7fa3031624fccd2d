//! Real-valued dimension from faithful traces: `dim_real(M) = 0` exactly when
//! the center-valued dimension vanishes, for every positive weight vector.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::Case;
use crate::algebra::{AlgebraDescriptor, CenterValue};
use crate::dimension::{dim_fp, dim_real, TraceWeights};
use crate::error::Error;
use crate::exactfield::{rat, Rational, Scalar};
use crate::io::module_to_json;
use crate::random;

const ALGEBRAS: [&str; 4] = ["gauss", "m2", "gauss_plus_m2", "m2_plus_m3"];
const WEIGHT_VECTORS: usize = 3;

pub(super) fn global(case: &mut Case) {
    let t = AlgebraDescriptor::builtin("gauss_plus_m2")
        .expect("builtin")
        .tower()
        .clone();
    case.check_with("negative_coordinate_rejected", || {
        let v = CenterValue::from_rationals(&t, [rat(-1, 2), rat(1, 1)]);
        Ok(matches!(
            dim_real(&v, &TraceWeights::uniform(2)),
            Err(Error::NegativeCoordinate(_))
        ))
    });
}

pub(super) fn case(rng: &mut ChaCha8Rng, case: &mut Case) {
    let name = ALGEBRAS[rng.random_range(0..ALGEBRAS.len())];
    let a = AlgebraDescriptor::builtin(name).expect("builtin");
    let n = rng.random_range(1..=2);
    let cols = rng.random_range(0..=3);
    let m = random::presentation(rng, &a, n, cols);
    case.record("algebra", json!(name));
    case.record("module", module_to_json(&m));
    let blocks = a.num_blocks();
    let mut weights = vec![TraceWeights::uniform(blocks)];
    weights.extend((1..WEIGHT_VECTORS).map(|_| random::weights(rng, blocks)));

    let v = match dim_fp(&m) {
        Ok(v) => v,
        Err(e) => {
            case.check("dim_fp_runs", Err(e));
            return;
        }
    };
    if m.is_zero() {
        case.tally("zero_modules");
    }
    // field dimension of M is sum_b n_b^2 v_b, an oracle for v = 0
    case.check("central_zero_iff_module_zero", Ok(v.is_zero() == m.is_zero()));
    for w in &weights {
        case.check_with("real_zero_iff_central_zero", || {
            let real = dim_real(&v, w)?;
            let by_hand = v
                .as_rationals()
                .expect("rational dimensions")
                .iter()
                .zip(w.weights())
                .fold(Rational::from_integer(0.into()), |acc, (x, wb)| acc + x * wb);
            Ok(real == Scalar::from_rational(real.tower(), by_hand) && real.is_zero() == v.is_zero())
        });
    }
}
