#!/usr/bin/env python3
"""End-to-end checks of the hocat command line: exit codes, JSON output, determinism."""

import json
import pathlib
import subprocess
import sys
import tempfile
import unittest

BINARY = None
FIXTURES = None


def run(*args):
    proc = subprocess.run([BINARY, *map(str, args)], capture_output=True, text=True, timeout=120)
    return proc.returncode, proc.stdout


class CliTest(unittest.TestCase):
    def check(self, expected_code, *args):
        code, out = run(*args)
        self.assertEqual(code, expected_code, out)
        data = json.loads(out)
        code2, out2 = run(*args)
        self.assertEqual((code, out), (code2, out2), "output is not deterministic")
        return data

    def tab(self, name):
        return FIXTURES / "tabular" / f"{name}.json"

    def chain(self, name):
        return FIXTURES / "chain" / f"{name}.json"

    def test_validate_tabular(self):
        data = self.check(0, "validate", self.tab("walking_isomorphism"))
        self.assertTrue(data["valid"])
        data = self.check(1, "validate", self.tab("walking_arrow"))
        self.assertFalse(data["valid"])
        self.assertEqual({v["axiom"] for v in data["violations"]}, {"M2"})
        self.check(0, "validate", "--instance", self.tab("grid"))

    def test_validate_chain(self):
        data = self.check(0, "validate", self.chain("D1"), "--seed", 3)
        self.assertEqual(data["homology"], [0, 0])
        self.check(0, "validate", self.chain("quasi_iso"))

    def test_input_errors(self):
        with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as f:
            f.write("{not json")
        data = self.check(2, "validate", f.name)
        self.assertEqual(data["error"]["kind"], "input")
        self.check(2, "validate", FIXTURES / "missing.json")
        self.check(2, "compute", "nonsense", "--instance", self.chain("S0"))
        self.check(2, "compute", "homology", "--instance", self.tab("grid"))
        self.check(2, "decide", "pi0", "--instance", self.tab("grid"), "--f", "nope", "--g", "01_11")
        self.check(2, "frobnicate")
        self.check(2, "validate", self.tab("grid"), "--format", "xml")

    def test_compute(self):
        data = self.check(0, "compute", "homology", "--instance", self.chain("D1"))
        self.assertEqual(data["homology"], [0, 0])
        data = self.check(0, "compute", "split-we", "--instance", self.chain("quasi_iso"))
        self.assertTrue(data["checks"]["ok"])
        data = self.check(0, "compute", "replace", "--instance", self.tab("grid"), "--object", "00")
        self.assertEqual(data["RX"], "01")
        self.assertEqual(data["v"], "00_01")
        self.assertTrue(data["checks"]["ok"])
        data = self.check(0, "compute", "q-cylinder", "--instance", self.chain("S0"))
        self.assertTrue(data["cylinder"]["quillen"])
        data = self.check(0, "compute", "pi0-quotient", "--instance", self.chain("S0"))
        self.assertEqual(data["count"], 2)
        data = self.check(0, "compute", "pi0-quotient", "--instance", self.tab("grid"), "--object", "01",
                          "--target", "11")
        self.assertEqual(data["count"], 1)
        data = self.check(1, "compute", "split-we", "--instance", self.tab("grid"), "--morphism", "01_11")
        self.assertEqual(data["error"]["kind"], "precondition")

    def test_factorize_golden(self):
        for system in ("cof-trivfib", "trivcof-fib"):
            code, out = run("compute", "factorize", "--instance", self.chain("quasi_iso"), "--system", system)
            self.assertEqual(code, 0)
            golden = (FIXTURES / "chain" / "golden" / f"factorize_quasi_iso_{system}.json").read_text()
            self.assertEqual(out, golden)

    def test_decide(self):
        data = self.check(0, "decide", "pi0", "--instance", self.tab("grid"), "--f", "01_11", "--g", "01_11")
        self.assertTrue(data["answer"])
        self.assertIn("witness", data)
        data = self.check(0, "decide", "two-cells-equal", "--instance", self.chain("homotopy_pair"))
        self.assertTrue(data["answer"])
        self.assertEqual(data["witness"]["k"]["degree"], 2)
        data = self.check(1, "decide", "germ", "--instance", self.tab("germ_toy"), "--left", "a0,a1,s1,x,ha",
                          "--right", "b0,b1,s2,x,hb")
        self.assertFalse(data["answer"])
        self.assertTrue(data["exhaustive"])
        self.assertGreater(data["searched"], 0)
        data = self.check(0, "decide", "classify", "--instance", self.chain("quasi_iso"))
        self.assertEqual(data["classes"], {"we": True, "fib": True, "cof": False})
        data = self.check(0, "decide", "classify", "--instance", self.tab("grid"), "--morphism", "00_01")
        self.assertEqual(data["classes"], {"we": True, "fib": False, "cof": True})


if __name__ == "__main__":
    BINARY = sys.argv[1]
    FIXTURES = pathlib.Path(sys.argv[2])
    unittest.main(argv=[sys.argv[0], "-v"])
