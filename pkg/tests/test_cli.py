import csv
import io as stdio

import pytest

from inca import io
from inca.cli import main
from inca.generators import generate_corpus
from inca.parse import decode


@pytest.fixture
def text_file(tmp_path):
    path = tmp_path / "s.txt"
    path.write_bytes(generate_corpus("mutated-repeat", 300, 3, 2))
    return path


def run(argv, capsysbinary):
    code = main([str(a) for a in argv])
    out, err = capsysbinary.readouterr()
    return code, out, err


def test_profile(text_file, capsysbinary):
    code, out, _ = run(["profile", text_file], capsysbinary)
    assert code == 0
    rows = list(csv.reader(stdio.StringIO(out.decode())))
    assert rows[0] == ["q", "ell_q"] and len(rows) == 301


def test_grammar_pipeline(text_file, tmp_path, capsysbinary):
    g = tmp_path / "g.txt"
    assert run(["gen", "rlslp", text_file, "--scheme", "random-merge", "-o", g], capsysbinary)[0] == 0
    code, out, _ = run(["rlslp", "check", g], capsysbinary)
    assert code == 0 and out.startswith(b"ok n=300")
    assert run(["rlslp", "expand", g], capsysbinary)[1] == text_file.read_bytes()
    code, out, _ = run(["rlslp", "access", g, "--pos", 5], capsysbinary)
    assert out.strip() == text_file.read_bytes()[4:5]
    b = tmp_path / "b.txt"
    code, out, _ = run(["rlslp", "balance", g, b, "--report"], capsysbinary)
    assert code == 0 and out.startswith(b"rules_in,")
    code, out, _ = run(["access", "grammar", b, "--pos", 7, "--cost"], capsysbinary)
    assert code == 0 and b"pred_k=" in out
    code, out, _ = run(["access", "grammar", g, "--all"], capsysbinary)
    assert len(out.splitlines()) == 301


def test_block_tree_commands(text_file, capsysbinary):
    assert run(["bt", "build", text_file], capsysbinary)[1].startswith(b"ok L=")
    assert b"pruning_ratio=" in run(["bt", "stats", text_file], capsysbinary)[1]
    out = run(["bt", "access", text_file, "--pos", 10, "--word-size", 16], capsysbinary)[1]
    assert out[:1] == text_file.read_bytes()[9:10]


def test_parse_commands(text_file, tmp_path, capsysbinary):
    p = tmp_path / "p.txt"
    run(["gen", "parse", text_file, "--scheme", "random-bidirectional", "-o", p, "--seed", 3],
        capsysbinary)
    assert run(["parse", "decode", p], capsysbinary)[1] == text_file.read_bytes()
    assert b"max_height=" in run(["parse", "stats", p], capsysbinary)[1]
    c = tmp_path / "c.txt"
    code, out, _ = run(["parse", "contract", p, c, "--report", "--alpha", 2], capsysbinary)
    assert code == 0 and out.startswith(b"size_in,")
    assert decode(io.read_parse(c)) == text_file.read_bytes()
    code, out, _ = run(["parse", "access", c, "--pos", 4, "--alpha", 2, "--arity", 4],
                       capsysbinary)
    assert code == 0 and b"h_q=" in out


def test_pred_bench(tmp_path, capsysbinary):
    keys = tmp_path / "k.txt"
    keys.write_text("9 497 508 527 531 844\n1379 1381\n")
    code, out, _ = run(["pred", "bench", keys, "--queries", 50, "--word-size", 7], capsysbinary)
    assert code == 0 and len(out.splitlines()) == 51


@pytest.mark.parametrize("kind", ["rlslp", "grammar", "blocktree", "parse", "contracted"])
def test_bench_csv(text_file, kind, capsysbinary):
    code, out, _ = run(["bench", kind, text_file, "--queries", "sample", "--sample", 20,
                        "--word-size", 16], capsysbinary)
    rows = list(csv.DictReader(stdio.StringIO(out.decode())))
    assert code == 0 and len(rows) == 20 and rows[0]["kind"] == kind


def test_gen_text_to_stdout(capsysbinary):
    code, out, _ = run(["gen", "text", "fibonacci", "--n", 8], capsysbinary)
    assert code == 0 and out == b"abaababa"


def test_missing_file_exits_2(tmp_path, capsysbinary):
    code, _, err = run(["profile", tmp_path / "nope"], capsysbinary)
    assert code == 2 and b"inca:" in err


def test_bad_grammar_exits_1(tmp_path, capsysbinary):
    bad = tmp_path / "bad.txt"
    bad.write_text("B X X X\nS X\n")
    assert run(["rlslp", "check", bad], capsysbinary)[0] == 1
    bad.write_text("garbage\n")
    assert run(["rlslp", "check", bad], capsysbinary)[0] == 1


def test_missing_pos_exits_1(text_file, capsysbinary):
    assert run(["bt", "access", text_file], capsysbinary)[0] == 1


def test_non_contracting_exits_1(tmp_path, capsysbinary):
    p = tmp_path / "p.txt"
    p.write_text("E abc\nC 2 1\nE xxxxxxxxxxxxxxxxxxxxxxxxxxxxxx\nC 3 1\n")
    assert run(["parse", "access", p, "--pos", 1, "--alpha", 2], capsysbinary)[0] == 1
