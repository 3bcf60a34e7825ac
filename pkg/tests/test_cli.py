import json
import random

import pytest

from negscope import corpus as cp
from negscope.cli import EXIT_OK, EXIT_REJECTS, EXIT_USAGE, main
from negscope.synthetic import cue_training_sentences, random_record

from golden import GOLDEN_SCOPES, WONT_BE_ABLE, sent


def write_jsonl(path, records):
    path.write_text("".join(cp.dumps(r) + "\n" for r in records), encoding="utf-8")
    return path


def read_jsonl(path):
    return [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines() if line.strip()]


def golden_records():
    recs = []
    for k, (tree, cue, gold) in enumerate(GOLDEN_SCOPES):
        s = sent(tree)
        recs.append({
            "id": f"g{k}",
            "tokens": [{"surface": t.surface, "pos": t.pos} for t in s.tokens],
            "parse": tree,
            "gold_cues": [{"index": cue, "is_true_cue": True}],
            "gold_scopes": [{"cue_index": cue, "token_indices": [i for i, t in enumerate(s.tokens)
                                                                 if t.surface in gold and i > cue]}],
            "note": f"keep-{k}",
        })
    return recs


def test_detect_and_evaluate_golden(tmp_path, capsys):
    src = write_jsonl(tmp_path / "gold.jsonl", golden_records())
    out = tmp_path / "pred.jsonl"
    assert main(["detect", str(src), "-o", str(out), "--gold-cues", "--trace"]) == EXIT_OK
    preds = read_jsonl(out)
    assert [p["scope_text"] for p in preds] == [" ".join(g) for _, _, g in GOLDEN_SCOPES]
    assert preds[0]["note"] == "keep-0" and "trace" in preds[0]
    rep = tmp_path / "rep.json"
    assert main(["evaluate", "--gold", str(src), "--pred", str(out), "--json", str(rep)]) == EXIT_OK
    data = json.loads(rep.read_text())
    assert data["pcs"] == 1.0 and data["in_scope"]["f1"] == 1.0
    assert "PCS" in capsys.readouterr().out


def test_detect_lexicon_cues_without_model(tmp_path):
    src = write_jsonl(tmp_path / "in.jsonl", golden_records())
    out = tmp_path / "p.jsonl"
    assert main(["detect", str(src), "-o", str(out)]) == EXIT_OK
    assert [(p["id"], p["cue_form"]) for p in read_jsonl(out)] == [("g0", "no"), ("g1", "not"), ("g2", "not")]


def test_detect_baseline(tmp_path):
    rec = golden_records()[1]
    del rec["parse"]
    src = write_jsonl(tmp_path / "in.jsonl", [rec])
    out = tmp_path / "p.jsonl"
    assert main(["detect", str(src), "-o", str(out), "--baseline", "punctuation"]) == EXIT_OK
    assert read_jsonl(out)[0]["scope_text"] == "want to update it anymore"


def test_detect_rejects_missing_tree(tmp_path):
    recs = golden_records()
    del recs[1]["parse"]
    src = tmp_path / "in.jsonl"
    write_jsonl(src, recs)
    with open(src, "a") as fh:
        fh.write("{broken\n")
    out = tmp_path / "p.jsonl"
    assert main(["detect", str(src), "-o", str(out)]) == EXIT_REJECTS
    assert len(read_jsonl(out)) == 2
    rejects = read_jsonl(tmp_path / "p.jsonl.rejects.jsonl")
    assert [(r["line"], r["id"]) for r in rejects] == [(2, "g1"), (4, None)]
    assert "missing tree" in rejects[0]["error"]


def _cue_corpus(path, seed=0):
    recs = []
    for k, (s, i, y) in enumerate(cue_training_sentences(n_per_template=4, seed=seed)):
        recs.append({"id": f"t{k}", "tokens": [{"surface": t.surface, "pos": t.pos} for t in s.tokens],
                     "gold_cues": [{"index": i, "is_true_cue": y}]})
    return write_jsonl(path, recs)


def test_train_cue_deterministic(tmp_path):
    src = _cue_corpus(tmp_path / "train.jsonl")
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["train-cue", str(src), "-o", str(a), "--seed", "3"]) == EXIT_OK
    assert main(["train-cue", str(src), "-o", str(b), "--seed", "3"]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    # the model plugs into detect
    tweet = {"id": "tw2", "tokens": [{"surface": w, "pos": p} for w, p in [
        ("If", "IN"), ("not", "RB"), (",", ","), ("we", "PRP"), ("can", "MD"), ("look", "VB"),
        ("into", "IN"), ("options", "NNS"), (":", ":")]],
        "parse": "(ROOT (S (SBAR (IN If) (RB not)) (, ,) (NP (PRP we)) (VP (MD can) (VP (VB look)"
                 " (PP (IN into) (NP (NNS options))))) (: :)))"}
    inp = write_jsonl(tmp_path / "tw.jsonl", [tweet])
    out = tmp_path / "p.jsonl"
    assert main(["detect", str(inp), "-o", str(out), "--cue-model", str(a)]) == EXIT_OK
    (p,) = read_jsonl(out)
    assert p["is_true_cue"] is False and p["scope"] == []


def test_train_cue_single_class(tmp_path, capsys):
    src = write_jsonl(tmp_path / "t.jsonl", [golden_records()[0]])
    assert main(["train-cue", str(src), "-o", str(tmp_path / "m.json")]) == EXIT_USAGE
    assert "single class" in capsys.readouterr().err


def test_transform_antonym(tmp_path):
    s = sent(WONT_BE_ABLE)
    rec = {"id": "w", "tokens": [{"surface": t.surface, "pos": t.pos} for t in s.tokens], "parse": WONT_BE_ABLE}
    src = write_jsonl(tmp_path / "in.jsonl", [rec])
    scopes = tmp_path / "s.jsonl"
    assert main(["detect", str(src), "-o", str(scopes)]) == EXIT_OK
    out = tmp_path / "t.jsonl"
    assert main(["transform", str(src), "--scopes", str(scopes), "--mode", "antonym", "-o", str(out)]) == EXIT_OK
    (t,) = read_jsonl(out)
    assert t["transformed_text"] == "looks like I be incapable to vote because the train is running late ."
    out2 = tmp_path / "t2.jsonl"
    assert main(["transform", str(src), "--scopes", str(scopes), "-o", str(out2)]) == EXIT_OK
    assert read_jsonl(out2)[0]["transformed_text"].startswith("looks like I won't NOT_be NOT_able")


def test_agree(tmp_path, capsys):
    a = golden_records()
    b = json.loads(json.dumps(a))
    b[1]["gold_scopes"][0]["token_indices"] = [3]
    pa, pb = write_jsonl(tmp_path / "a.jsonl", a), write_jsonl(tmp_path / "b.jsonl", b)
    js = tmp_path / "agree.json"
    assert main(["agree", str(pa), str(pb), "--json", str(js)]) == EXIT_OK
    data = json.loads(js.read_text())
    assert data["full_scope_agreement"] == pytest.approx(2 / 3)
    assert "token agreement" in capsys.readouterr().out


def test_convert_round_trip(tmp_path):
    recs = golden_records()
    src = write_jsonl(tmp_path / "in.jsonl", recs)
    conll = tmp_path / "c.txt"
    assert main(["convert", str(src), "--to", "conll", "-o", str(conll)]) == EXIT_OK
    back = tmp_path / "back.jsonl"
    assert main(["convert", str(conll), "--to", "jsonl", "-o", str(back)]) == EXIT_OK
    got = read_jsonl(back)
    assert [g["gold_scopes"] for g in got] == [r["gold_scopes"] for r in recs]


def test_normalize(tmp_path, capsys):
    src = tmp_path / "t.txt"
    src.write_text("@Support not working https://x.co/1 #fail\n")
    assert main(["normalize", str(src)]) == EXIT_OK
    assert capsys.readouterr().out == "MENTION not working URL fail\n"


@pytest.mark.parametrize("argv", [[], ["detect"], ["evaluate", "--gold", "x"], ["transform", "a", "--scopes", "b",
                                                                                "--mode", "bogus"]])
def test_usage_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == EXIT_USAGE


def test_missing_input_file(tmp_path):
    assert main(["detect", str(tmp_path / "nope.jsonl")]) == EXIT_USAGE


def test_detect_random_records(tmp_path):
    rng = random.Random(5)
    src = write_jsonl(tmp_path / "r.jsonl", [random_record(rng, f"r{k}") for k in range(50)])
    out = tmp_path / "p.jsonl"
    assert main(["detect", str(src), "-o", str(out)]) == EXIT_OK
    for p in read_jsonl(out):
        sc = p["scope"]
        assert p["cue_index"] not in sc
        if sc:
            assert sc == list(range(p["cue_index"] + 1, sc[-1] + 1))
