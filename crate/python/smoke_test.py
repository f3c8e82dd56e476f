"""Smoke test for the extension module.

Build it first:
    cargo build -p rdx-py --release
    cp target/release/librdx.so python/rdx.so
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import rdx  # noqa: E402

P5 = [(0, 1), (1, 2), (2, 3), (3, 4)]
C5 = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]


def main():
    assert rdx.gamma_r(P5) == 4
    assert rdx.gamma_r(C5) == 4
    assert rdx.gamma([(0, 1), (1, 2), (2, 3)]) == 2
    assert rdx.is_excellent(P5)
    assert not rdx.is_excellent([(0, 1), (0, 2), (0, 3)])

    report = rdx.partition(P5)
    assert report["gamma_r"] == 4
    assert report["classes"]["V02"] == [2]

    accepted = rdx.recognize([(0, 1), (1, 2), (2, 3)])
    assert accepted["result"] == "accept"
    assert accepted["statuses"] == "ABBA"
    rejected = rdx.recognize([(0, 1), (0, 2), (0, 3)])
    assert rejected["result"] == "reject" and rejected["witness"] != 0

    gen = rdx.generate(5, 4)
    assert gen == rdx.generate(5, 4)
    assert rdx.is_excellent([tuple(e) for e in gen["tree"]["edges"]])

    assert rdx.classify(C5)["excellent"]
    try:
        rdx.recognize([(0, 1), (1, 2), (2, 0)])
    except ValueError as e:
        assert "tree" in str(e)
    else:
        raise AssertionError("a cycle was accepted as a tree")
    print("smoke test passed")


if __name__ == "__main__":
    main()
