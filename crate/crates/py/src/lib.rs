//! Python bindings. Rationals go in as anything whose `str()` parses (`"1/3"`,
//! `Fraction(1, 3)`, `"0.(01)"`) and come out as `"p/q"` strings.

use pyo3::prelude::*;

#[pymodule]
mod harmonic_gasket {
    use gasket_core::exact::expansion::{expand as core_expand, format_bits, parse_bits, Variant};
    use gasket_core::exact::matrix::word_product_bits;
    use gasket_core::exact::rational::{check_unit_interval, fmt_rational, parse_rational, Rational};
    use gasket_core::exact::words::enumerate_necklace_classes;
    use gasket_core::exact::Expansion;
    use gasket_core::harmonic::{self, BoundaryTriple, LinearForm, UValue};
    use gasket_core::holder::{self, MatrixNorm};
    use gasket_core::tangent::{self, DirRef};
    use num_bigint::BigInt;
    use pyo3::exceptions::{PyOverflowError, PyValueError};
    use pyo3::prelude::*;

    fn err(e: gasket_core::Error) -> PyErr {
        match e {
            gasket_core::Error::Resource { .. } => PyOverflowError::new_err(e.to_string()),
            _ => PyValueError::new_err(e.to_string()),
        }
    }

    fn point(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
        let text = obj.str()?.to_string();
        let s = if text.contains('(') {
            Expansion::parse(&text).map_err(err)?.value()
        } else {
            parse_rational(&text).map_err(err)?
        };
        check_unit_interval(&s).map_err(err)?;
        Ok(s)
    }

    /// Exponent data for one rational point.
    #[pyclass(frozen, get_all)]
    struct HolderReport {
        s: String,
        expansion: String,
        period: String,
        n: usize,
        scaled_trace: BigInt,
        lambda_: String,
        alpha: f64,
        alpha_lo: f64,
        alpha_hi: f64,
        derivative_class: String,
    }

    #[pymethods]
    impl HolderReport {
        fn __repr__(&self) -> String {
            format!(
                "HolderReport(s={}, period={}, n={}, scaled_trace={}, alpha={:.6}, class={})",
                self.s, self.period, self.n, self.scaled_trace, self.alpha, self.derivative_class
            )
        }
    }

    impl From<holder::HolderReport> for HolderReport {
        fn from(r: holder::HolderReport) -> Self {
            HolderReport {
                s: fmt_rational(&r.s),
                expansion: r.expansion.to_string(),
                period: r.period_string(),
                n: r.n,
                scaled_trace: r.scaled_trace,
                lambda_: r.lambda.to_string(),
                alpha: r.alpha,
                alpha_lo: r.enclosure.lo,
                alpha_hi: r.enclosure.hi,
                derivative_class: r.derivative_class.name().to_string(),
            }
        }
    }

    /// Exact `u(s)` at a dyadic as three `"p/q"` strings.
    #[pyfunction]
    fn u_exact(s: &Bound<'_, PyAny>) -> PyResult<(String, String, String)> {
        let v = harmonic::u_exact_rational_dyadic(&point(s)?).map_err(err)?;
        let [a, b, c] = v.0.each_ref().map(fmt_rational);
        Ok((a, b, c))
    }

    /// `u(s)` from `n` expansion digits: `((x, y, z), error_bound)`; exact dyadics have bound 0.
    #[pyfunction]
    #[pyo3(signature = (s, n = 40))]
    fn u_approx(s: &Bound<'_, PyAny>, n: usize) -> PyResult<((f64, f64, f64), f64)> {
        match harmonic::u_at(&point(s)?, n).map_err(err)? {
            UValue::Exact(v) => {
                let [a, b, c] = v.to_f64();
                Ok(((a, b, c), 0.0))
            }
            UValue::Approx(p) => Ok(((p.value[0], p.value[1], p.value[2]), p.error_bound)),
        }
    }

    /// Binary expansion `"0.pre(period)"`; `variant` is `"upper"` or `"lower"`.
    #[pyfunction]
    #[pyo3(signature = (s, variant = "upper"))]
    fn expand(s: &Bound<'_, PyAny>, variant: &str) -> PyResult<String> {
        let v = match variant {
            "upper" => Variant::Upper,
            "lower" => Variant::Lower,
            other => return Err(PyValueError::new_err(format!("unknown variant {other:?}"))),
        };
        Ok(core_expand(&point(s)?, v).map_err(err)?.to_string())
    }

    /// Integer entries and the power of 5 dividing them, for a word in `"01w"`.
    #[pyfunction]
    fn word_product(word: &str) -> PyResult<(Vec<Vec<BigInt>>, u32)> {
        let symbols = gasket_core::exact::matrix::Symbol::parse_word(word).map_err(err)?;
        let m = gasket_core::exact::matrix::word_product(symbols);
        Ok((m.entries().iter().map(|r| r.to_vec()).collect(), m.pow5()))
    }

    #[pyfunction]
    fn alpha(s: &Bound<'_, PyAny>) -> PyResult<HolderReport> {
        Ok(holder::alpha_rational(&point(s)?).map_err(err)?.into())
    }

    #[pyfunction]
    fn classify_u(s: &Bound<'_, PyAny>) -> PyResult<String> {
        Ok(holder::classify_u(&point(s)?).map_err(err)?.name().to_string())
    }

    /// Class of `Φ∘u`; `form` is a preset name or `"a,b,c"`.
    #[pyfunction]
    #[pyo3(signature = (s, form = "phi"))]
    fn classify(s: &Bound<'_, PyAny>, form: &str) -> PyResult<String> {
        let form = LinearForm::parse(form).map_err(err)?;
        Ok(holder::classify_uacb(&form, &point(s)?).map_err(err)?.name().to_string())
    }

    /// Exact tangent chart as text, and its float value.
    #[pyfunction]
    fn tangent_direction(s: &Bound<'_, PyAny>) -> PyResult<(String, f64)> {
        let d = tangent::tangent_direction(&point(s)?).map_err(err)?;
        Ok((d.chart.to_string(), d.chart.to_f64()))
    }

    #[pyfunction]
    fn kernel_test(form: &str, s: &Bound<'_, PyAny>) -> PyResult<String> {
        let form = LinearForm::parse(form).map_err(err)?;
        let d = tangent::tangent_direction(&point(s)?).map_err(err)?;
        Ok(format!("{:?}", tangent::kernel_test(&form, DirRef::Exact(&d))))
    }

    #[pyfunction]
    #[pyo3(signature = (max_len, dedupe_complement = true))]
    fn table(py: Python<'_>, max_len: usize, dedupe_complement: bool) -> PyResult<Vec<HolderReport>> {
        let rows = py.detach(|| holder::generate_table(max_len, dedupe_complement)).map_err(err)?;
        Ok(rows.into_iter().map(HolderReport::from).collect())
    }

    /// Differences between `table(7)` and the published rows; empty when they agree.
    #[pyfunction]
    fn check_table() -> PyResult<Vec<String>> {
        let rows = holder::generate_table(7, true).map_err(err)?;
        Ok(holder::check_golden(&rows))
    }

    /// `(n, estimate)` for each requested prefix length of a bit string.
    #[pyfunction]
    #[pyo3(signature = (bits, ns, norm = "frobenius"))]
    fn alpha_estimate(py: Python<'_>, bits: &str, ns: Vec<usize>, norm: &str) -> PyResult<Vec<(usize, f64)>> {
        let word = parse_bits(bits).map_err(err)?;
        let norm = match norm {
            "frobenius" => MatrixNorm::FrobeniusB,
            "max" => MatrixNorm::MaxAbsB,
            other => return Err(PyValueError::new_err(format!("unknown norm {other:?}"))),
        };
        Ok(py.detach(|| holder::alpha_estimate(&word, &ns, norm)).points)
    }

    /// `(mean, median, fraction_above_one, low_confidence)`.
    #[pyfunction]
    fn lyapunov(py: Python<'_>, nbits: usize, trials: usize, seed: u64) -> (f64, f64, f64, bool) {
        let s = py.detach(|| holder::lyapunov_random_estimate(nbits, trials, seed));
        (s.mean, s.median, s.fraction_above_one, s.low_confidence)
    }

    #[pyfunction]
    #[pyo3(signature = (length, dedupe_complement = false))]
    fn necklaces(length: usize, dedupe_complement: bool) -> Vec<String> {
        enumerate_necklace_classes(length, dedupe_complement).iter().map(|w| format_bits(w)).collect()
    }

    /// Values of the scalar harmonic function with corner values `a, b, c` on `S_level`,
    /// keyed by integer vertex `(i, j)` meaning `(i + jω)/2^level`.
    #[pyfunction]
    fn harmonic_grid(
        a: &Bound<'_, PyAny>,
        b: &Bound<'_, PyAny>,
        c: &Bound<'_, PyAny>,
        level: u32,
    ) -> PyResult<Vec<((u32, u32), String)>> {
        let q = |o: &Bound<'_, PyAny>| -> PyResult<Rational> { parse_rational(&o.str()?.to_string()).map_err(err) };
        let boundary = BoundaryTriple::new(q(a)?, q(b)?, q(c)?);
        let grid = harmonic::harmonic_grid(&boundary, level, harmonic::grid_cap_from_env()).map_err(err)?;
        Ok(grid.values().iter().map(|(k, v)| (*k, fmt_rational(v))).collect())
    }

    /// Plane trace of a bit word, `"p/q"`.
    #[pyfunction]
    fn plane_trace(bits: &str) -> PyResult<String> {
        let word = parse_bits(bits).map_err(err)?;
        Ok(fmt_rational(&gasket_core::exact::matrix::plane_trace(&word_product_bits(&word))))
    }
}
