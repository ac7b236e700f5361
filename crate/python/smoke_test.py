"""Smoke test for the spschur Python extension.

Build and install first:  pip install --no-build-isolation -e crates/python
"""

import json

import spschur
from spschur import Element, Multiset, QuadForm, Vector


def main():
    n = 4
    e1, e4 = Vector.basis(n, 1), Vector.basis(n, n)
    assert e1.dot(e4) and not e1.dot(Vector.basis(n, 2))

    t = Element.transvection(e1)
    assert (t * t) == Element.identity(n)
    assert t.apply(e4) == e1 + e4
    assert (t * Element.transvection(e4)).class_tag() == "tt1"

    sizes = spschur.class_sizes(n)
    assert sizes == (15, 45, 40, 20, 720), sizes

    cls = Multiset.transvection_class(n)
    sq = cls * cls
    assert sq.coefficient(Element.identity(n)) == 15
    assert sq.spectrum() == {15: 1, 2: 45, 3: 40}, sq.spectrum()
    assert sq.mass() == 225

    target = Element.product(n, [e1, e4])
    pairs = spschur.factorizations(target, 2)
    assert sorted(map(tuple, pairs), key=str) == sorted(
        [(e1, e4), (e4, e1 + e4), (e1 + e4, e1)], key=str
    )
    assert spschur.transvection_length(target) == 2

    q = QuadForm.standard(6, True)
    assert q.sign() == "minus" and q.arf()
    so = q.so_transvections()
    assert len(so) == 36
    rest = [v for v in Vector.nonzero(6) if not q.eval(v)]
    checks = spschur.verify(6, [rest, so])
    assert all(passed for _, passed, _ in checks), checks

    sol = spschur.solve_relations("so-minus", 2, 6)
    assert sol["verdict"] == "feasible"
    assert sol["values"]["lambda2"] == "20"

    assert "lemma-7.2" in spschur.suite_ids()
    report = json.loads(spschur.run_suite("lemma-7.2"))
    assert report["checks"][0]["status"] == "pass"
    assert report["checks"][0]["values"]["found"] == 16

    try:
        spschur.run_suite("no-such-suite")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown suite accepted")

    print("smoke test ok")


if __name__ == "__main__":
    main()
