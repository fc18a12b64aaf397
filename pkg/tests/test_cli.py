"""Command-line interface: outputs, exit codes, machine round trips."""

import json

import effectdiagrams as ed
from effectdiagrams import presentations
from effectdiagrams.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.strip(), captured.err.strip()


class TestEval:
    def test_dist(self, capsys):
        code, out, _ = run(capsys, "eval", "-m", "dist", "-f", "10",
                           "choice(v, choice(v,w))")
        assert code == 0 and out == "{v: 3/4, w: 1/4}"

    def test_maybe_omega(self, capsys):
        code, out, _ = run(capsys, "eval", "-m", "maybe", "-f", "100",
                           "OMEGA")
        assert code == 0 and out == "↑"

    def test_output(self, capsys):
        code, out, _ = run(capsys, "eval", "-m", "output", "-f", "10",
                           "print[a](print[b](v))")
        assert code == 0 and out == '("ab", v)'

    def test_machine_format(self, capsys):
        code, out, _ = run(capsys, "eval", "-m", "dist", "--format",
                           "machine", "choice(v, w)")
        assert code == 0
        parsed = json.loads(out)
        assert parsed["kind"] == "dist"
        assert parsed["entries"] == [["v", "1/2"], ["w", "1/2"]]

    def test_program_from_file(self, capsys, tmp_path):
        path = tmp_path / "prog.lam"
        path.write_text("choice(v, w)\n", encoding="utf-8")
        code, out, _ = run(capsys, "eval", "-m", "dist", f"@{path}")
        assert code == 0 and out == "{v: 1/2, w: 1/2}"

    def test_parse_error_exit_2(self, capsys):
        code, _, err = run(capsys, "eval", "-m", "maybe", "(\\x. x")
        assert code == 2 and "parse error" in err

    def test_signature_error_exit_3(self, capsys):
        code, _, err = run(capsys, "eval", "-m", "maybe", "choice(v, w)")
        assert code == 3 and "signature" in err

    def test_bad_index_exit_3(self, capsys):
        code, _, err = run(capsys, "eval", "-m", "output",
                           "--alphabet", "ab", "print[z](v)")
        assert code == 3

    def test_exceptions_flag(self, capsys):
        code, out, _ = run(capsys, "eval", "-m", "exc",
                           "--exceptions", "boom,bust", "raise[bust]()")
        assert code == 0 and out == "raise bust"

    def test_custom_prelude(self, capsys, tmp_path):
        path = tmp_path / "prelude.lam"
        path.write_text("twice = \\f. \\x. f (f x)\n", encoding="utf-8")
        code, out, _ = run(capsys, "eval", "-m", "maybe",
                           "--prelude", str(path), "twice id v")
        assert code == 0 and out == "v"


class TestDiagram:
    def test_dist(self, capsys):
        code, out, _ = run(capsys, "diagram", "-m", "dist", "choice(v,w)")
        assert code == 0 and out == "[1/2,1/2 ‖ 1→v ; 2→w]"

    def test_maybe_value(self, capsys):
        code, out, _ = run(capsys, "diagram", "-m", "maybe", "v")
        assert code == 0 and out == "[η ‖ 1→v]"

    def test_maybe_omega(self, capsys):
        code, out, _ = run(capsys, "diagram", "-m", "maybe", "OMEGA")
        assert code == 0 and out == "[⊥ ‖ ]"


def write_presentation(path, pres):
    path.write_text(ed.render(pres, "machine"), encoding="utf-8")


def trivial_member(kind, value):
    return ed.Presentation(ed.trivial_effect(kind), (value,))


class TestCompose:
    def test_dist_blocks(self, capsys, tmp_path):
        from fractions import Fraction as F
        outer = ed.Presentation(
            ed.GenericEffect(2, ed.MonadValue(
                ed.DIST, {1: F(1, 2), 2: F(1, 2)})), ("p", "q"))
        fam1 = trivial_member(ed.DIST, "x")
        fam2 = ed.Presentation(
            ed.GenericEffect(2, ed.MonadValue(
                ed.DIST, {1: F(1, 2), 2: F(1, 2)})), ("x", "y"))
        paths = []
        for i, pres in enumerate([outer, fam1, fam2]):
            p = tmp_path / f"p{i}.json"
            write_presentation(p, pres)
            paths.append(str(p))
        code, out, _ = run(capsys, "compose", "-m", "dist", *paths)
        assert code == 0
        assert out == "[1/2,1/4,1/4 ‖ 1→x ; 2→x ; 3→y]"

    def test_identity_family_round_trip(self, capsys, tmp_path):
        # machine output of `diagram` feeds back through `compose`
        code, out, _ = run(capsys, "diagram", "-m", "dist",
                           "--format", "machine", "choice(v, choice(v,w))")
        assert code == 0
        original = presentations.from_obj(json.loads(out))
        paths = [tmp_path / "outer.json"]
        paths[0].write_text(out, encoding="utf-8")
        for i, value in enumerate(original.row):
            p = tmp_path / f"triv{i}.json"
            write_presentation(p, trivial_member(ed.DIST, value))
            paths.append(p)
        code, out2, _ = run(capsys, "compose", "-m", "dist", "--format",
                            "machine", *[str(p) for p in paths])
        assert code == 0
        composed = presentations.from_obj(json.loads(out2))
        assert ed.diagram_eq(composed, original)

    def test_family_length_mismatch_exit_4(self, capsys, tmp_path):
        from fractions import Fraction as F
        outer = ed.Presentation(
            ed.GenericEffect(2, ed.MonadValue(
                ed.DIST, {1: F(1, 2), 2: F(1, 2)})), ("p", "q"))
        p0, p1 = tmp_path / "a.json", tmp_path / "b.json"
        write_presentation(p0, outer)
        write_presentation(p1, trivial_member(ed.DIST, "x"))
        code, _, err = run(capsys, "compose", str(p0), str(p1))
        assert code == 4 and "error" in err

    def test_kind_mismatch_exit_3(self, capsys, tmp_path):
        p0, p1 = tmp_path / "a.json", tmp_path / "b.json"
        write_presentation(p0, trivial_member(ed.DIST, "x"))
        write_presentation(p1, trivial_member(ed.MAYBE, "x"))
        code, _, _ = run(capsys, "compose", str(p0), str(p1))
        assert code == 3


class TestLaws:
    def test_default_run_exits_zero(self, capsys):
        code, out, _ = run(capsys, "laws", "--seed", "1", "--trials", "5")
        assert code == 0
        assert "expectations met" in out

    def test_expected_failure_is_green(self, capsys):
        code, out, _ = run(capsys, "laws", "--laws", "commutativity",
                           "--monads", "output", "--trials", "3")
        assert code == 0
        assert "fail    fail" in out
        assert "counterexample" in out

    def test_kleisli_single_trial(self, capsys):
        code, out, _ = run(capsys, "laws", "--laws", "kleisli",
                           "--trials", "1")
        assert code == 0 and "unexpected" not in out

    def test_machine_report(self, capsys):
        code, out, _ = run(capsys, "laws", "--format", "machine",
                           "--laws", "bottom", "--trials", "2",
                           "--seed", "7")
        assert code == 0
        parsed = json.loads(out)
        assert parsed["ok"] is True
        assert {r["law"] for r in parsed["results"]} == {"bottom"}

    def test_unknown_law_errors(self, capsys):
        code, _, err = run(capsys, "laws", "--laws", "bogus")
        assert code == 1 and "unknown law" in err
