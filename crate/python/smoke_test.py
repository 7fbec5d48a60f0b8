"""Smoke test for the superck Python extension.

Build and install it first:
    pip install -e crates/python --no-build-isolation
then run
    python python/smoke_test.py
"""

import json
import sys

import superck


def check(label, ok):
    print(("PASS " if ok else "FAIL ") + label)
    return ok


def main():
    results = []

    sig = superck.Signature(2, 1)
    results.append(check("x^2 + |x|^2 = 0", sig.parse("X(x)^2 + NORM2(x)").is_zero()))
    weyl = superck.Signature(1, 1).parse("eg1*eg2 - eg2*eg1")
    results.append(check("Weyl commutator", str(weyl) == "1"))

    x = sig.parse("X(x)")
    lhs = (x ** 3).dirac()
    # c(M, 3) = M + 2 with M = 0
    results.append(check("Dirac on x^3", lhs == x * x * sig.parse("2")))
    f = sig.parse("x1^2*x2 - 3*xg1*xg2*x1 + e1*x2")
    results.append(check("D^2 = -Laplacian", f.dirac().dirac() == -f.laplacian()))

    flat = superck.Signature(2, 2)
    results.append(check("normalized integral of 1", str(flat.parse("1").normalized_integral()) == "1"))

    ys = superck.Signature(3, 0, 1, 1)
    f0 = ys.parse("y1^2 - yg1*yg2 + e1*y1")
    series = f0.ck_extend()
    results.append(check("CK series shape", series["case"] == "i" and series["terms"][0]["j"] == 0))
    ck = f0.ck_extension()
    results.append(check("CK extension is monogenic", (ck.dirac("x") + ck.dirac("y")).is_zero()))

    pw_sig = superck.Signature(2, 2, 1, 1, plane_wave=True)
    g0 = pw_sig.parse("y1^2 + yg1*yg2")
    odd = pw_sig.parse("y1")
    results.append(check("plane waves reproduce the CK extension (case ii)",
                         g0.plane_wave_decomposition(odd=odd) == g0.ck_extension(odd=odd)))

    kernel = superck.cauchy_kernel(3, 0)
    results.append(check("Cauchy kernel is nonzero", not kernel.is_zero()))
    passed, lhs, rhs = superck.verify_pwdck(0, 1, 3)
    results.append(check("Cauchy kernel plane waves, m = 0", passed and lhs == rhs))

    try:
        sig.parse("x1 +")
        results.append(check("parse error raises", False))
    except ValueError:
        results.append(check("parse error raises", True))

    report = superck.verify("sl2", degree=4, seed=7, cases=3)
    results.append(check("verify sl2", report["summary"]["failed"] == 0 and report["summary"]["total"] > 0))
    try:
        import jsonschema
    except ImportError:
        print("SKIP schema validation (jsonschema not installed)")
    else:
        jsonschema.validate(report, json.loads(superck.REPORT_SCHEMA))
        results.append(check("report matches schema", True))

    print(f"{sum(results)}/{len(results)} passed")
    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())
