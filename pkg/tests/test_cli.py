from contextlib import redirect_stderr, redirect_stdout
import csv
from io import StringIO
import json
import os
from tempfile import TemporaryDirectory
from typing import Optional
import unittest
from unittest import TestCase
from unittest.mock import patch

from radial_hermite.cli import dispatch
from radial_hermite.inner_product import GramMatrix, gram_matrix, norm_sq
from radial_hermite.params import ModelParams
from radial_hermite.utils import THREADS_ENV_VAR


def run(argv: list[str], config_files: Optional[list[str]] = None) -> tuple[int, str, str]:
    """Runs the command line in-process and returns (exit status, stdout, stderr)."""
    stdout, stderr = StringIO(), StringIO()

    with redirect_stdout(stdout), redirect_stderr(stderr):
        status = dispatch(argv, config_files=config_files)

    return status, stdout.getvalue(), stderr.getvalue()


class PolyCommandTests(TestCase):
    def test_json(self) -> None:
        status, out, _ = run("poly --r 3 --nu 1 --N 6 --format json".split())
        self.assertEqual(status, 0)
        self.assertEqual(json.loads(out), {"N": 6, "r": 3, "nu": "1", "terms": [[0, "-2"], [6, "4"]]})

    def test_csv(self) -> None:
        status, out, _ = run("poly --r 3 --nu 1 --N 6".split())
        self.assertEqual(status, 0)
        self.assertEqual(out, "degree,coeff_num,coeff_den\n0,-2,1\n6,4,1\n")

    def test_negative_nu(self) -> None:
        status, out, _ = run(["poly", "--r", "1", "--nu=-1/3", "--N", "2", "--format", "json"])
        self.assertEqual(status, 0)
        self.assertEqual(json.loads(out)["terms"], [[0, "-2/3"], [2, "4"]])

    def test_output_file(self) -> None:
        with TemporaryDirectory() as temp_dir:
            path = os.path.join(temp_dir, "h6.csv")
            status, out, _ = run(["poly", "--r", "3", "--nu", "1", "--N", "6", "--output", path])

            with open(path) as f:
                written = f.read()

        self.assertEqual(status, 0)
        self.assertEqual(out, "")
        self.assertEqual(written, "degree,coeff_num,coeff_den\n0,-2,1\n6,4,1\n")


class GramCommandTests(TestCase):
    def test_orthogonal(self) -> None:
        status, out, err = run("gram --r 5 --nu 1/2 --nmax 10".split())
        self.assertEqual(status, 0)
        self.assertEqual(err, "")

        rows = list(csv.DictReader(StringIO(out)))
        self.assertEqual(len(rows), 121)
        self.assertTrue(all(row["base"] == "0" for row in rows if row["N"] != row["M"]))

    def test_deterministic(self) -> None:
        argv = "gram --r 3 --nu 7/3 --nmax 8 --format json".split()
        self.assertEqual(run(argv)[1], run(argv)[1])

    def test_threads_flag(self) -> None:
        with patch("radial_hermite.cli.gram_matrix", wraps=gram_matrix) as mock:
            status, _, _ = run("--threads 2 gram --r 3 --nu 1 --nmax 5".split())

        self.assertEqual(status, 0)
        mock.assert_called_once_with(ModelParams(r=3, nu=1), 5, threads=2)

    def test_threads_from_config_file(self) -> None:
        with TemporaryDirectory() as temp_dir:
            path = os.path.join(temp_dir, "config.txt")

            with open(path, "w") as f:
                f.write("--threads 2")

            with patch("radial_hermite.cli.gram_matrix", wraps=gram_matrix) as mock:
                status, out, _ = run("gram --r 3 --nu 1 --nmax 5".split(), config_files=[path])

        self.assertEqual(status, 0)
        self.assertEqual(mock.call_args.kwargs["threads"], 2)
        self.assertEqual(out, run("gram --r 3 --nu 1 --nmax 5".split())[1])

    def test_nonzero_off_diagonal(self) -> None:
        broken = gram_matrix(ModelParams(r=1, nu=0), 2)
        entries = [list(row) for row in broken.entries]
        entries[0][2], entries[2][0] = entries[0][0], entries[0][0]
        broken = GramMatrix(params=broken.params, n_max=2, entries=tuple(tuple(row) for row in entries))

        with patch("radial_hermite.cli.gram_matrix", return_value=broken):
            status, out, err = run("gram --r 1 --nu 0 --nmax 2".split())

        self.assertEqual(status, 1)
        self.assertTrue(out.startswith("N,M,value_float"))
        self.assertIn("2 off-diagonal Gram entries are not zero", err)


class NormsCommandTests(TestCase):
    def test_json(self) -> None:
        status, out, _ = run("norms --r 3 --nu 1 --nmax 12 --format json".split())
        self.assertEqual(status, 0)

        record = json.loads(out)
        self.assertLess(record["max_rel_deviation"], 1e-12)
        self.assertEqual(record["rows"][6]["zeta_symbolic"], "8*Gamma(1/2)")

    def test_csv_matches_json(self) -> None:
        rows = list(csv.DictReader(StringIO(run("norms --r 5 --nu 7/3 --nmax 15".split())[1])))
        record = json.loads(run("norms --r 5 --nu 7/3 --nmax 15 --format json".split())[1])
        self.assertEqual(rows[-1]["N"], "max_rel_deviation")

        for row, entry in zip(rows[:-1], record["rows"]):
            self.assertEqual(int(row["N"]), entry["N"])
            self.assertEqual(float(row["zeta_float"]), entry["zeta_float"])
            self.assertEqual(row["zeta_symbolic"], entry["zeta_symbolic"])


class SpectrumCommandTests(TestCase):
    def test_real_line(self) -> None:
        status, out, _ = run("spectrum --r 1 --nu 0 --nmax 4".split())
        self.assertEqual(status, 0)

        rows = list(csv.DictReader(StringIO(out)))
        self.assertEqual([row["E_SUSY"] for row in rows], ["0", "2", "2", "4", "4"])
        self.assertEqual([row["E_H0"] for row in rows], ["1/2", "3/2", "5/2", "7/2", "9/2"])

    def test_degeneracy(self) -> None:
        record = json.loads(run("spectrum --r 3 --nu 1 --nmax 5 --format json".split())[1])
        self.assertEqual([row["degeneracy"] for row in record["rows"]], [3, 3, 3, 6, 6, 6])
        self.assertEqual([row["class"] for row in record["rows"]], ["even"] * 3 + ["odd"] * 3)

    def test_norms_past_double_range(self) -> None:
        status, out, err = run("spectrum --r 1 --nu 0 --nmax 160".split())
        self.assertEqual((status, err), (0, ""))

        rows = list(csv.DictReader(StringIO(out)))
        self.assertEqual(len(rows), 161)
        self.assertEqual(rows[0]["zeta_float"], "1.77245385090552")
        self.assertEqual(rows[160]["zeta_float"], "inf")
        self.assertEqual(rows[160]["E_SUSY"], "160")

        record = json.loads(run("spectrum --r 1 --nu 0 --nmax 160 --format json".split())[1])
        self.assertIsNone(record["rows"][160]["zeta_float"])


class EvalCommandTests(TestCase):
    def test_default_grid(self) -> None:
        status, out, _ = run("eval --r 3 --nu 1 --N 4".split())
        self.assertEqual(status, 0)
        self.assertEqual(len(out.splitlines()), 1 + 3 * 201)

    def test_custom_grid(self) -> None:
        status, out, _ = run("eval --r 5 --nu 1/2 --N 2 --grid -1 1 5 --format json".split())
        self.assertEqual(status, 0)

        samples = json.loads(out)["samples"]
        self.assertEqual(len(samples), 25)
        self.assertEqual([sample["t"] for sample in samples[:5]], [-1.0, -0.5, 0.0, 0.5, 1.0])

    def test_large_degree(self) -> None:
        status, out, err = run("eval --r 1 --nu 0 --N 160 --grid -2 2 9".split())
        self.assertEqual((status, err), (0, ""))

        rows = list(csv.DictReader(StringIO(out)))
        self.assertEqual(len(rows), 9)
        self.assertTrue(all(abs(float(row["re_h"])) < 1.0 for row in rows))

    def test_invalid_grid(self) -> None:
        status, _, err = run("eval --r 1 --nu 0 --N 2 --grid 1 -1 5".split())
        self.assertEqual(status, 1)
        self.assertIn("--grid", err)


class VerifyCommandTests(TestCase):
    def test_single_point(self) -> None:
        status, out, _ = run("verify --r 5 --nu 1/2 --nmax 20".split())
        self.assertEqual(status, 0)

        rows = list(csv.DictReader(StringIO(out)))
        self.assertTrue(rows)
        self.assertEqual({(row["r"], row["nu"], row["status"]) for row in rows}, {("5", "1/2", "pass")})

    def test_full_grid(self) -> None:
        status, out, _ = run("verify --nmax 4 --format json".split())
        self.assertEqual(status, 0)

        record = json.loads(out)
        self.assertTrue(record["passed"])
        self.assertEqual(len({(check["r"], check["nu"]) for check in record["checks"]}), 12)

    def test_failure_exit_status(self) -> None:
        with patch("radial_hermite.verification.norm_sq", side_effect=lambda params, N: norm_sq(params, N) * 2):
            status, out, err = run("verify --r 3 --nu 1 --nmax 4".split())

        self.assertEqual(status, 1)
        self.assertIn("3,1,norm_closed_form,fail", out)
        self.assertIn("norm_closed_form", err)

    def test_needs_both_parameters(self) -> None:
        status, out, err = run("verify --r 3".split())
        self.assertEqual(status, 1)
        self.assertEqual(out, "")
        self.assertTrue(err.startswith("error: "))


class ErrataCommandTests(TestCase):
    def test_json(self) -> None:
        status, out, _ = run("errata --format json".split())
        self.assertEqual(status, 0)

        items = json.loads(out)["errata"]
        self.assertEqual(len(items), 6)
        self.assertTrue(all(item["reproduced"] for item in items))

    def test_csv(self) -> None:
        status, out, _ = run(["errata"])
        self.assertEqual(status, 0)
        self.assertEqual(out.splitlines()[0], "label,printed,corrected,evidence,reproduced")


class ErrorTests(TestCase):
    def test_even_r(self) -> None:
        status, out, err = run("poly --r 2 --nu 1 --N 3".split())
        self.assertEqual((status, out), (1, ""))
        self.assertTrue(err.startswith("error: "))

    def test_nu_out_of_range(self) -> None:
        status, _, err = run(["poly", "--r", "1", "--nu=-1/2", "--N", "3"])
        self.assertEqual(status, 1)
        self.assertTrue(err.startswith("error: "))

    def test_malformed_nu(self) -> None:
        self.assertEqual(run("poly --r 1 --nu 0.5 --N 3".split())[0], 1)

    def test_negative_degree(self) -> None:
        self.assertEqual(run("poly --r 1 --nu 0 --N -1".split())[0], 1)
        self.assertEqual(run("gram --r 1 --nu 0 --nmax -1".split())[0], 1)

    def test_threads_must_be_positive(self) -> None:
        self.assertEqual(run("--threads 0 errata".split())[0], 1)

    def test_bad_threads_environment(self) -> None:
        with patch.dict(os.environ, {THREADS_ENV_VAR: "many"}):
            status, _, err = run("gram --r 1 --nu 0 --nmax 3".split())

        self.assertEqual(status, 1)
        self.assertIn(THREADS_ENV_VAR, err)

    def test_usage_errors(self) -> None:
        for argv in [[], ["frobnicate"], ["poly", "--r", "3", "--nu", "1", "--N", "6", "--format", "xml"], ["poly"]]:
            with self.assertRaises(SystemExit) as context:
                run(argv)

            self.assertEqual(context.exception.code, 2)


if __name__ == "__main__":
    unittest.main()
