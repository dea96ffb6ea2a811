import pytest

from ryser.cli import main
from ryser.formats import parse, serialize
from ryser.gen import fixture, random_home_base

FANO_TEXT = "thg 2 2 2\ne 1 1 1\ne 1 2 2\ne 2 1 2\ne 2 2 1\n"


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    write.dir = tmp_path
    write("fano.thg", FANO_TEXT)
    write("s8.thg", serialize(fixture("S8").hypergraph))
    H, P = fixture("FANO")
    write("fano.frp", serialize(P, H.sizes))
    return write


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_tau_golden(files, capsys):
    code, out, _ = run(capsys, "tau", files.dir / "fano.thg")
    assert code == 0
    assert out == "tau 2\ncover 1:1 1:2\nRESULT tau=2\n"


def test_nu_golden(files, capsys):
    code, out, _ = run(capsys, "nu", files.dir / "s8.thg")
    assert code == 0
    assert out == "nu 3\nmatching {1:1 2:2 3:3} {1:2 2:3 3:1} {1:3 2:1 3:2}\nRESULT nu=3\n"


def test_recognize_s8_is_negative(files, capsys):
    code, out, _ = run(capsys, "recognize", files.dir / "s8.thg")
    assert code == 1
    assert out == "NOT-HOME-BASE\nRESULT verdict=NOT-HOME-BASE nu=3\n"


def test_recognize_fano_writes_partition(files, capsys):
    target = files.dir / "out.frp"
    code, out, _ = run(capsys, "recognize", files.dir / "fano.thg", "--out", target)
    assert code == 0
    assert out.splitlines()[0] == "HOME-BASE"
    assert out.splitlines()[-1] == "RESULT verdict=HOME-BASE nu=1 F=1 R=0"
    assert parse(target.read_text()).payload == fixture("FANO").partition


def test_verify_golden(files, capsys):
    code, out, _ = run(capsys, "verify", files.dir / "fano.thg", "--partition", files.dir / "fano.frp")
    assert code == 0
    assert out == (
        "FR-partition (1)pass (2)pass (3)pass (4)pass\n"
        "matchable yes\nedge-home yes\nproper yes\nHOME-BASE\n"
        "RESULT home_base=true fr=true matchable=true edge_home=true proper=true\n"
    )


def test_verify_reports_unmatchable(files, capsys):
    H, P = fixture("UNMATCH")
    g = files("u.thg", serialize(H))
    p = files("u.frp", serialize(P, H.sizes))
    code, out, _ = run(capsys, "verify", g, "--partition", p)
    assert code == 1
    assert "Hall violator" in out and "matchable no" in out
    assert out.endswith("RESULT home_base=false fr=true matchable=false edge_home=true proper=true\n")


def test_verify_size_mismatch_is_input_error(files, capsys):
    p = files("small.frp", "frp 1 1 1\nR 1:1 2:1 3:1\nW\n")
    code, out, err = run(capsys, "verify", files.dir / "fano.thg", "--partition", p)
    assert code == 2 and "do not match" in err


def test_parse_error_is_positional(files, capsys):
    bad = files("bad.thg", "thg 1 1 1\ne 1 1 2\n")
    code, out, err = run(capsys, "nu", bad)
    assert code == 2
    assert err == f"error: {bad}: line 2: index 2 out of range in class 3\n"
    assert out == "RESULT error=input\n"


def test_missing_file_and_wrong_kind(files, capsys):
    code, _, err = run(capsys, "nu", files.dir / "nope.thg")
    assert code == 2 and "error:" in err
    code, _, err = run(capsys, "recognize", files.dir / "fano.frp")
    assert code == 2 and "expected a thg document" in err


def test_unknown_command_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_link_golden(files, capsys):
    code, out, _ = run(capsys, "link", files.dir / "fano.thg", "--class", 1)
    assert code == 0
    assert out == "bg 2 2\ne 1 1\ne 1 2\ne 2 1\ne 2 2\nRESULT edges=4 nu=2\n"
    code, out, _ = run(capsys, "link", files.dir / "fano.thg", "--class", 1, "--dot")
    assert out.splitlines()[:2] == ["graph link {", '  "2:1" -- "3:1";']
    code, out, _ = run(capsys, "link", files.dir / "fano.thg", "--class", 3, "--subset", "1")
    assert out == "bg 2 2\ne 1 1\ne 2 2\nRESULT edges=2 nu=2\n"
    code, _, err = run(capsys, "link", files.dir / "fano.thg", "--class", 4)
    assert code == 2


def test_link_output_feeds_cpdecomp(files, capsys):
    g = files.dir / "l.bg"
    run(capsys, "link", files.dir / "fano.thg", "--class", 3, "--out", g)
    assert parse(g.read_text()).kind == "bg"
    d = files.dir / "l.cpd"
    code, out, _ = run(capsys, "cpdecomp", g, "--out", d)
    assert code == 0 and out.endswith("RESULT found=true pieces=1\n")
    code, out, _ = run(capsys, "cpdecomp", g, "--check", d)
    assert code == 0 and out == "VALID\nRESULT valid=true\n"


def test_cpdecomp_negative(files, capsys):
    g = files("star.bg", "bg 1 2\ne 1 1\ne 1 2\n")
    code, out, _ = run(capsys, "cpdecomp", g)
    assert code == 1 and out == "NO-CP-DECOMPOSITION\nRESULT found=false\n"
    d = files("bad.cpd", "cpd 1 2\n")
    code, out, _ = run(capsys, "cpdecomp", g, "--check", d)
    assert code == 1 and out.startswith("INVALID")


def test_conn_golden(files, capsys, monkeypatch):
    monkeypatch.delenv("RYSER_MAX_DIM", raising=False)
    code, out, _ = run(capsys, "conn", files.dir / "s8.thg")
    assert code == 0
    assert out == (
        "f-vector 8 10 2\nH~_0: rank 1\nH~_1: rank 2\nH~_2: rank 0\n"
        "hom_conn -1\nRESULT hom_conn=-1 lower_bound=false cap=2\n"
    )


def test_conn_cap_sources(files, capsys, monkeypatch):
    monkeypatch.setenv("RYSER_MAX_DIM", "0")
    code, out, _ = run(capsys, "conn", files.dir / "s8.thg")
    assert out.splitlines()[-1] == "RESULT hom_conn=-1 lower_bound=true cap=0"  # only ">= -1" is knowable
    code, out, _ = run(capsys, "conn", files.dir / "s8.thg", "--max-dim", 1)
    assert out.splitlines()[-1].endswith("cap=1")
    monkeypatch.setenv("RYSER_MAX_DIM", "x")
    code, _, _ = run(capsys, "conn", files.dir / "s8.thg")
    assert code == 2
    code, _, _ = run(capsys, "conn", files.dir / "s8.thg", "--of", "bipartite", "--max-dim", 1)
    assert code == 2


def test_cromulent_golden(files, capsys):
    code, out, _ = run(
        capsys, "cromulent", files.dir / "fano.thg", "--y1", "1:1,1:2", "--y2", "2:1,2:2", "--x", "3:1,3:2"
    )
    assert code == 1
    assert out.splitlines()[-2:] == ["not-cromulent", "RESULT verdict=not-cromulent failed=3"]
    H = fixture("MIN_R").hypergraph
    m = files("minr.thg", serialize(H))
    code, out, _ = run(capsys, "cromulent", m, "--y1", "1:1", "--y2", "2:1", "--x", "3:2")
    assert code == 0 and "RESULT verdict=perfectly-cromulent failed=none" in out
    code, _, _ = run(capsys, "cromulent", m, "--y1", "1:9", "--y2", "2:1", "--x", "3:2")
    assert code == 2


def test_gen_commands(files, capsys):
    code, out, _ = run(capsys, "gen", "FANO")
    assert code == 0 and out == FANO_TEXT + "RESULT edges=4 sizes=2,2,2\n"
    code, out, _ = run(capsys, "gen", "random", "--k", 2, "--seed", 5)
    assert code == 0
    H = parse(out).payload
    assert H == random_home_base(5, 2)[0]
    assert run(capsys, "gen", "random", "--k", -1)[0] == 2
    assert run(capsys, "gen", "nope")[0] == 2
    assert run(capsys, "gen")[0] == 2


def test_gen_blueprint_and_from_cp(files, capsys):
    bp = files("b.bp", "bp 0 1\nR 1 1 1\n")
    out_g, out_p = files.dir / "g.thg", files.dir / "g.frp"
    code, _, _ = run(capsys, "gen", "--blueprint", bp, "--out", out_g, "--partition-out", out_p)
    assert code == 0
    assert parse(out_g.read_text()).payload == fixture("MIN_R").hypergraph
    code, _, _ = run(capsys, "verify", out_g, "--partition", out_p)
    assert code == 0
    bad = files("bad.bp", "bp 0 1\nR 1 1 1\nx W1 W1 W1\n")
    assert run(capsys, "gen", "--blueprint", bad)[0] == 2
    g = files("c4.bg", "bg 2 2\ne 1 1\ne 1 2\ne 2 1\ne 2 2\n")
    d = files("c4.cpd", "cpd 2 2\nC 1 1 2 2\n")
    code, out, _ = run(capsys, "gen", "--from-cp", g, d)
    assert code == 0 and out.endswith("RESULT edges=4 sizes=2,2,2\n")
    wrong = files("p4.cpd", "cpd 2 2\nP 1 1 2 2\n")
    assert run(capsys, "gen", "--from-cp", g, wrong)[0] == 2


def test_enumerate_golden(capsys):
    code, out, _ = run(capsys, "enumerate", "--sizes", "1,1,1", "--max-edges", 1, "--check")
    assert code == 0
    assert out == (
        "1: -  nu=0 tau=0 home_base=yes\n"
        "2: 1,1,1  nu=1 tau=1 home_base=no\n"
        "RESULT count=2 extremal=1 recognized=1 mismatches=0\n"
    )
    code, out, _ = run(capsys, "enumerate", "--sizes", "2,2,2", "--max-edges", 4, "--quiet")
    assert code == 0 and out.startswith("RESULT count=")
    assert run(capsys, "enumerate", "--sizes", "2,2", "--max-edges", 1)[0] == 2
    assert run(capsys, "enumerate", "--sizes", "5,1,1", "--max-edges", 1)[0] == 2
