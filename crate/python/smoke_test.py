"""Smoke test for the compiled extension.

Build and install it first:
    maturin build --release -m crates/python/Cargo.toml -o dist && pip install dist/relidem-*.whl
"""

import relidem


def main():
    assert set(relidem.gallery_names()) == {
        "paper-idem-not-alg",
        "paper-alg-not-free",
        "trivial",
        "split-endo",
    }

    r = relidem.gallery("paper-idem-not-alg")
    flags = r["flags"]
    assert flags["idempotent"] is True
    assert flags["algebraically_idempotent"] is False
    assert flags["algebras_on_e"] == 2
    assert all(law["ok"] for law in r["laws"])

    r = relidem.gallery("paper-alg-not-free")
    assert r["flags"]["kleisli_objects"] == 1
    assert r["flags"]["kleisli_equiv_algebras"] is False

    for name in relidem.gallery_names():
        again = relidem.classify(relidem.gallery_source(name), "T")
        assert again["flags"] == relidem.gallery(name)["flags"], name

    reports = relidem.check(relidem.gallery_source("split-endo"))
    assert all(law["ok"] for rep in reports for law in rep["laws"])

    try:
        relidem.classify("category C { objects: a", "T")
    except ValueError as e:
        assert "parse error" in str(e)
    else:
        raise AssertionError("parse error not raised")

    out = relidem.search(2, 4, require=["idempotent"], forbid=["algebraically_idempotent"], census=True)
    assert out["outcome"] == "exhausted"
    assert out == relidem.search(2, 4, require=["idempotent"], forbid=["algebraically_idempotent"], census=True)

    print("smoke test passed")


if __name__ == "__main__":
    main()
