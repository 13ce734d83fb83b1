"""Tests for the wishbound command line."""

import io
import os
import shutil
import tempfile
import unittest
from pathlib import Path

from wishbound.cli import EXIT_OK, EXIT_USAGE, main

TEST_FILES_DIR = Path(__file__).parent / "test_files"


class CliTestCase(unittest.TestCase):

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def run_cli(self, *argv):
        stdout, stderr = io.StringIO(), io.StringIO()
        code = main(list(argv), stdout=stdout, stderr=stderr)
        return code, stdout.getvalue(), stderr.getvalue()


class TestBoundCommand(CliTestCase):

    def test_two_by_two(self):
        code, out, _ = self.run_cli("bound", "--n", "2", "--m", "2", "--alpha", "0,1")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("case: alpha1_zero", out)
        self.assertIn("  2/1", out)
        self.assertIn("smallest_degree: 0", out)
        self.assertIn("predicted: 0", out)
        self.assertIn("status: ok", out)

    def test_dump_poly_matches_golden_file(self):
        path = os.path.join(self.temp_dir, "r.txt")
        code, _, _ = self.run_cli("bound", "--n", "3", "--m", "3", "--alpha", "0,1,0", "--dump-poly", path)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(Path(path).read_text(), (TEST_FILES_DIR / "r_3x3_p2.txt").read_text())

    def test_all_zero_alpha(self):
        code, _, err = self.run_cli("bound", "--n", "3", "--m", "3", "--alpha", "0,0,0")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("AllZeroAlpha", err)

    def test_alpha_length_mismatch(self):
        code, _, err = self.run_cli("bound", "--n", "3", "--m", "3", "--alpha", "1,0")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("InvalidAlpha", err)

    def test_config_file_with_override(self):
        config = str(TEST_FILES_DIR / "run_3x3.yaml")
        code, out, _ = self.run_cli("bound", "--config", config, "--alpha", "0,0,1")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("alpha: 0;0;1", out)
        self.assertIn("predicted: 0", out)

    def test_unknown_config_key(self):
        code, _, err = self.run_cli("bound", "--config", str(TEST_FILES_DIR / "unknown_key.yaml"))
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("snr", err)


class TestPepCommand(CliTestCase):

    def test_exact_curve_to_stdout(self):
        code, out, _ = self.run_cli("pep", "--n", "2", "--m", "2", "--alpha", "0,1",
                                    "--grid", "0:40:10", "--source", "exact")
        self.assertEqual(code, EXIT_OK)
        lines = out.splitlines()
        self.assertEqual(lines[0], "gamma_db,value,stderr,source,n,m,alpha,predicted_exponent")
        self.assertEqual(len(lines), 7)
        self.assertTrue(lines[-1].startswith("# slope=-0.9"))
        self.assertTrue(lines[-1].endswith("predicted=-1"))

    def test_files_and_exact_column(self):
        csv_path = os.path.join(self.temp_dir, "curve.csv")
        svg_path = os.path.join(self.temp_dir, "curve.svg")
        code, out, _ = self.run_cli("pep", "--n", "2", "--m", "2", "--alpha", "1,0", "--grid", "0:20:10",
                                    "--source", "bound", "--exact-column", "--out", csv_path,
                                    "--svg", svg_path)
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith("# slope="))
        header = Path(csv_path).read_text().splitlines()[0]
        self.assertTrue(header.endswith(",exact"))
        self.assertIn("<polyline", Path(svg_path).read_text())

    def test_monte_carlo_curve(self):
        code, out, _ = self.run_cli("pep", "--n", "2", "--m", "2", "--alpha", "0,1", "--grid", "0:6:3",
                                    "--source", "mc", "--samples", "2000", "--seed", "4")
        self.assertEqual(code, EXIT_OK)
        row = out.splitlines()[2].split(",")
        self.assertEqual(row[3], "mc")
        self.assertNotEqual(row[2], "")

    def test_envelope(self):
        code, _, err = self.run_cli("pep", "--n", "5", "--m", "5", "--alpha", "1,0,0,0,0",
                                    "--grid", "0:10:10")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("Y <= 4", err)

    def test_bad_source(self):
        code, _, _ = self.run_cli("pep", "--source", "nope")
        self.assertEqual(code, EXIT_USAGE)


class TestPlotAndVerify(CliTestCase):

    def test_plot(self):
        code, out, _ = self.run_cli("plot", str(TEST_FILES_DIR / "curve_1x1.csv"))
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith("<svg"))

    def test_plot_empty_csv(self):
        code, _, err = self.run_cli("plot", str(TEST_FILES_DIR / "empty.csv"))
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("empty", err)

    def test_verify_normalization(self):
        out_path = os.path.join(self.temp_dir, "results.csv")
        code, out, _ = self.run_cli("verify", "normalization", "--max-dim", "2", "--out", out_path)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.strip(), "# normalization: 8 checks, 0 failures")
        self.assertTrue(Path(out_path).read_text().startswith("suite,"))

    def test_verify_unknown_suite(self):
        code, _, err = self.run_cli("verify", "theorem3")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("theorem3", err)


if __name__ == '__main__':
    unittest.main()
