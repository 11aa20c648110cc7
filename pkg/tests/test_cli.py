import json
import math
from fractions import Fraction

from pytest import fixture, mark, raises

from levelsweep.barcodes import Bar
from levelsweep.categories import Flavor
from levelsweep.cli import (
    EXIT_INVALID,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_PARSE,
    RunConfig,
    bar_from_json,
    bar_to_json,
    barcodes_from_json,
    bench,
    compare_with_reference,
    main,
    run,
)
from levelsweep.complex import format_scx
from levelsweep.persistence import HeightAnalysis
from levelsweep.samples import SAMPLES, TILT, torus

TILT_ARGS = [str(x) for x in TILT.transform]


def write(tmp_path, name):
    path = tmp_path / f"{name}.scx"
    path.write_text(format_scx(SAMPLES[name]()), encoding="utf-8")
    return path


@fixture()
def torus_file(tmp_path):
    return write(tmp_path, "torus")


@fixture()
def sphere_file(tmp_path):
    return write(tmp_path, "sphere")


class TestRunConfig:
    def test_defaults(self, tmp_path):
        config = RunConfig(input=tmp_path / "x.scx")
        assert config.dims == (0, 1, 2)
        assert config.flavors == (Flavor.SUBLEVEL,)
        assert config.settings.perturb

    def test_no_perturb(self, tmp_path):
        config = RunConfig(input=tmp_path / "x.scx", perturb=False)
        assert not config.settings.perturb

    @mark.parametrize("dims", [(), (3,), (0, -1)])
    def test_bad_dims(self, tmp_path, dims):
        with raises(ValueError):
            RunConfig(input=tmp_path / "x.scx", dims=dims)

    def test_no_flavors(self, tmp_path):
        with raises(ValueError):
            RunConfig(input=tmp_path / "x.scx", flavors=())

    def test_singular_height(self, tmp_path):
        config = RunConfig(input=tmp_path / "x.scx", transform=("0",) * 12)
        with raises(ValueError):
            config.height


class TestJson:
    def test_bar(self):
        bar = Bar(1, Fraction(3, 2), float("inf"), True, False, 2, 5)
        data = bar_to_json(bar, [10, 11])
        assert data["birth"] == "3/2"
        assert data["death"] == "inf"
        assert data["generator"] == [10, 11]
        assert bar_from_json(1, data).key == bar.key

    def test_integral_values(self):
        data = bar_to_json(Bar(0, Fraction(2), Fraction(3), True, False, 1, 2))
        assert data["birth"] == 2 and isinstance(data["birth"], int)
        assert data["generator"] is None

    def test_exact_round_trip(self, sphere_file, capsys):
        transform = [*TILT_ARGS[:8], "1/3", "1/7", "1", "0"]
        argv = ["compute", "-i", str(sphere_file), "--transform", *transform]
        assert main(argv + ["--dims", "2"]) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        (bar,) = doc["dims"]["2"]["bars"]
        assert bar["birth"] == "73/21"
        (back,) = barcodes_from_json(doc)
        assert back.bars[0].birth == Fraction(73, 21)


class TestCompute:
    def test_torus(self, torus_file, tmp_path, capsys):
        out = tmp_path / "torus.json"
        argv = ["compute", "-i", str(torus_file), "--transform", *TILT_ARGS]
        code = main(argv + ["--dims", "1,2", "--verify", "--json", str(out)])
        assert code == EXIT_OK
        doc = json.loads(out.read_text(encoding="utf-8"))
        assert sorted(doc["dims"]) == ["1", "2"]
        infinite = {
            d: sum(b["death"] == "inf" for b in entry["bars"])
            for d, entry in doc["dims"].items()
        }
        assert infinite == {"1": 2, "2": 1}
        assert capsys.readouterr().out == ""

    def test_stdout(self, sphere_file, capsys):
        argv = ["compute", "-i", str(sphere_file), "--transform", *TILT_ARGS]
        assert main(argv + ["--dims", "2"]) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        (bc,) = barcodes_from_json(doc)
        assert bc.keys() == [(2, 4, 5, True, False)]

    def test_two_flavors_with_generators(self, sphere_file, capsys):
        argv = ["compute", "-i", str(sphere_file), "--transform", *TILT_ARGS]
        argv += ["--dims", "2", "--flavors", "levelset,sublevel", "--generators"]
        assert main(argv) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        levelset, sublevel = doc["dims"]["2"]
        assert levelset == {"flavor": "levelset", "bars": []}
        (bar,) = sublevel["bars"]
        assert bar["generator"] == [10, 11, 12, 13]

    def test_levelset_of_triangle(self, tmp_path, capsys):
        path = write(tmp_path, "triangle")
        assert main(["compute", "-i", str(path), "--flavors", "levelset"]) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert doc["dims"]["1"] == {"flavor": "levelset", "bars": []}
        assert len(doc["dims"]["0"]["bars"]) == 1

    def test_artifacts(self, torus_file, tmp_path):
        svg, dot = tmp_path / "bars.svg", tmp_path / "graph.dot"
        argv = ["compute", "-i", str(torus_file), "--transform", *TILT_ARGS]
        argv += ["--json", str(tmp_path / "out.json")]
        assert main(argv + ["--svg", str(svg), "--dot", str(dot)]) == EXIT_OK
        assert "<svg" in svg.read_text(encoding="utf-8")
        assert dot.read_text(encoding="utf-8").startswith("graph R {")
        reeb = tmp_path / "graph.reeb.dot"
        assert reeb.read_text(encoding="utf-8").startswith("graph Reeb {")

    def test_off_input(self, tmp_path, capsys):
        path = tmp_path / "tri.off"
        path.write_text("OFF\n3 1 0\n0 0 0\n2 0 1\n0 2 2\n3 0 1 2\n", encoding="utf-8")
        assert main(["compute", "-i", str(path), "--dims", "0"]) == EXIT_OK
        doc = json.loads(capsys.readouterr().out)
        assert doc["dims"]["0"]["bars"][0]["death"] == "inf"


class TestExitCodes:
    def test_malformed(self, tmp_path):
        path = tmp_path / "bad.scx"
        path.write_text("nonsense\n", encoding="utf-8")
        assert main(["compute", "-i", str(path)]) == EXIT_PARSE

    def test_off_without_counts(self, tmp_path):
        path = tmp_path / "empty.off"
        path.write_text("OFF\n", encoding="utf-8")
        assert main(["compute", "-i", str(path)]) == EXIT_PARSE

    def test_missing(self, tmp_path):
        assert main(["compute", "-i", str(tmp_path / "none.scx")]) == EXIT_PARSE

    def test_singular_transform(self, torus_file):
        argv = ["compute", "-i", str(torus_file), "--transform", *["0"] * 12]
        assert main(argv) == EXIT_INVALID

    def test_bad_dimension(self, torus_file):
        assert main(["compute", "-i", str(torus_file), "--dims", "3"]) == EXIT_INVALID

    def test_crossing(self, tmp_path):
        path = tmp_path / "cross.scx"
        path.write_text(
            "scx 5 1 1 0\n0 0 0\n4 0 0\n0 4 0\n1 1 -1\n1 1 1\ne 3 4\nt 0 1 2\n",
            encoding="utf-8",
        )
        argv = ["compute", "-i", str(path), "--check-embedding"]
        assert main(argv) == EXIT_INVALID

    def test_ties_without_perturbation(self, torus_file):
        argv = ["compute", "-i", str(torus_file), "--no-perturb"]
        assert main(argv) == EXIT_INVALID

    def test_mismatch(self, torus_file, mocker):
        mocker.patch("levelsweep.cli.compare_with_reference", return_value=["H1"])
        config = RunConfig(input=torus_file, verify=True)
        assert run(config) == EXIT_MISMATCH

    def test_verify_mismatch(self, torus_file, mocker, capsys):
        mocker.patch("levelsweep.cli.compare_with_reference", return_value=["H1: x"])
        assert main(["verify", "-i", str(torus_file)]) == EXIT_MISMATCH
        assert "H1: x" in capsys.readouterr().out


class TestVerify:
    @mark.parametrize("name", sorted(SAMPLES))
    def test_samples(self, tmp_path, name, capsys):
        path = write(tmp_path, name)
        argv = ["verify", "-i", str(path), "--transform", *TILT_ARGS]
        assert main(argv) == EXIT_OK
        assert capsys.readouterr().out.strip() == "ok"

    def test_compare(self):
        analysis = HeightAnalysis(SAMPLES["double-torus"](), TILT)
        assert compare_with_reference(analysis, (0, 1, 2)) == []

    def test_compare_reports_betti_numbers(self, mocker):
        analysis = HeightAnalysis(SAMPLES["sphere"](), TILT)
        mocker.patch("levelsweep.cli.betti_linear", return_value=(1, 0, 2))
        (problem,) = compare_with_reference(analysis, (2,))
        assert problem.startswith("H2")


class TestBench:
    def test_rows(self):
        ((size, seconds, slope),) = bench([4])
        assert size == torus(4, 4).size
        assert seconds > 0
        assert slope is None

    def test_main(self, mocker, capsys):
        mocker.patch(
            "levelsweep.cli.bench", return_value=[(96, 0.5, None), (384, 2.0, 1.0)]
        )
        assert main(["-v", "bench", "4", "8"]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 2
        assert lines[1].endswith("slope 1.00")

    def test_near_linear(self):
        # best of two runs
        runs = [bench([10, 20, 40], dims=(1,)) for _ in range(2)]
        sizes = [size for size, _, _ in runs[0]]
        best = [min(rows[i][1] for rows in runs) for i in range(3)]
        slope = math.log(best[2] / best[1]) / math.log(sizes[2] / sizes[1])
        assert slope <= 1.15
