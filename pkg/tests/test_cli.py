import io
import json

import pytest

from conductors import characters as ch
from conductors import cli
from conductors import examples as ex
from conductors.instances import (InstanceError, character_instance, dumps, parse_document,
                                  parse_instance, serialize, wd_instance)


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text if isinstance(text, str) else json.dumps(text))
        return str(path)
    return _write


def emit(write, name, *argv):
    code, out, _ = run("examples", *argv)
    assert code == 0
    return write(name, out)


def test_conductor_of_primitive_mod8_character(write):
    path = emit(write, "chi.json", "cyclotomic", "2", "3", "--primitive")
    code, out, err = run("conductor", "--input", path)
    assert code == 0, err
    assert "a=3 eps=1 delta=2" in out
    assert out.rstrip().endswith("VERDICT: AGREE")
    for row in ("artin_sum", "lower_integral", "upper_integral", "class_pairing"):
        assert row in out


def test_conductor_strict_on_realizable(write):
    path = emit(write, "chi.json", "cyclotomic", "3", "2", "--character", "1")
    code, out, _ = run("conductor", "--input", path, "--strict")
    assert code == 0


def test_split_multiplicative_wd(write):
    path = emit(write, "sm.json", "split-mult", "--q", "7")
    code, out, _ = run("wd", "--input", path)
    assert code == 0
    assert "integral=1 serre=1 deligne=1" in out
    assert "tate_424 corrected=1 uncorrected=0 (uncorrected fails)" in out


def test_filtration_tsv(write):
    path = emit(write, "f.json", "cyclotomic", "2", "3")
    code, out, _ = run("filtration", "--input", path, "--tsv")
    assert code == 0
    assert out.splitlines()[0] == "r\ts"
    assert "1\t1" in out.splitlines()
    code, out, _ = run("filtration", "--input", path)
    assert "upper_breaks: 1 2" in out and "lower_orders: 4 4 2 2 1" in out


def test_verify_sweep():
    code, out, _ = run("verify", "--sweep", "100", "--seed", "7")
    assert code == 0
    assert "100/100 AGREE" in out


def test_verify_is_deterministic():
    assert run("verify", "--sweep", "15", "--seed", "3") == run("verify", "--sweep", "15", "--seed", "3")


def test_output_json(write, tmp_path):
    path = emit(write, "chi.json", "tame", "6", "--character", "1")
    target = tmp_path / "report.json"
    code, _, _ = run("conductor", "--input", path, "--output", str(target))
    doc = json.loads(target.read_text())
    assert code == 0 and doc["verdict"] == "AGREE" and doc["values"]["artin_sum.a"] == "1"


def test_strict_refused_on_abstract_instance(write):
    rg, chi = ex.random_instance(3)
    path = write("abs.json", dumps(character_instance(chi)))
    code, _, err = run("conductor", "--input", path, "--strict")
    assert code == 2 and "--strict refused" in err


def _char_doc():
    return serialize(character_instance(ch.linear_characters(ex.cyclotomic_extension(2, 2))[1]))


def test_non_descending_chain_is_rejected(write):
    doc = _char_doc()
    doc["chain"] = [[0], [0, 1]]
    code, _, err = run("conductor", "--input", write("bad.json", doc))
    assert code == 2 and "not descending at indices 0, 1" in err


def test_unknown_kind_and_schema(write):
    doc = _char_doc()
    doc["kind"] = "galois"
    code, _, err = run("conductor", "--input", write("k.json", doc))
    assert code == 2 and "allowed kinds: filtration, character, wd" in err
    doc = _char_doc()
    doc["schema_version"] = 99
    code, _, err = run("conductor", "--input", write("v.json", doc))
    assert code == 2 and "schema_version" in err


def test_malformed_inputs(write, tmp_path):
    code, _, err = run("conductor", "--input", write("m.json", "{not json"))
    assert code == 2 and "malformed JSON at line 1" in err
    code, _, err = run("conductor", "--input", str(tmp_path / "missing.json"))
    assert code == 2 and "cannot read" in err
    doc = _char_doc()
    doc["character"]["values"] = doc["character"]["values"][:1]
    code, _, err = run("conductor", "--input", write("short.json", doc))
    assert code == 2 and "expected 2 values" in err
    doc = _char_doc()
    doc["group"] = {"mul": [[0, 1], [1, 1]]}
    code, _, err = run("conductor", "--input", write("grp.json", doc))
    assert code == 2 and "group" in err
    code, _, err = run("wd", "--input", write("c.json", _char_doc()))
    assert code == 2 and "kind must be 'wd'" in err


def test_corrupted_wd_instance_is_rejected(write):
    doc = serialize(wd_instance(ex.split_multiplicative()))
    doc["N"] = [["1", "0"], ["0", "0"]]
    code, _, err = run("wd", "--input", write("wd.json", doc))
    assert code == 2 and "nilpotent" in err


def test_disagreement_exits_one(write, monkeypatch):
    path = emit(write, "chi.json", "cyclotomic", "2", "3", "--primitive")
    orig = ch.upper_integral_parts
    monkeypatch.setattr(ch, "upper_integral_parts", lambda chi: (orig(chi)[0], orig(chi)[1] + 1))
    code, out, _ = run("conductor", "--input", path)
    assert code == 1 and "VERDICT: DISAGREE" in out


def test_wd_disagreement_exits_one(write, monkeypatch):
    from conductors import weildeligne as wdm
    path = emit(write, "sm.json", "split-mult")
    monkeypatch.setattr(wdm, "integral_conductor", lambda wd: 5)
    code, out, _ = run("wd", "--input", path)
    assert code == 1 and "VERDICT: DISAGREE" in out


@pytest.mark.parametrize("seed", range(10))
def test_serialization_round_trip(seed, write):
    _, chi = ex.random_instance(seed)
    inst = character_instance(chi)
    assert parse_instance(write(f"c{seed}.json", dumps(inst))) == inst
    wd = wd_instance(ex.random_wd_instance(seed))
    text = dumps(wd)
    again = parse_document(json.loads(text))
    assert again == wd and dumps(again) == text


def test_round_trip_of_presets():
    code, out, _ = run("examples", "cyclotomic", "3", "2", "--character", "2")
    doc = json.loads(out)
    assert doc["group"] == {"preset": "units_mod", "param": 9}
    assert dumps(parse_document(doc)) == out


def test_examples_errors():
    assert run("examples", "quartic", "2")[0] == 2
    assert run("examples", "cyclotomic", "4", "1")[0] == 2
    assert run("examples", "tame", "3", "--character", "9")[0] == 2
    assert run("examples", "tame", "3", "--primitive")[0] == 2


def test_instance_error_type():
    with pytest.raises(InstanceError):
        parse_document([])
