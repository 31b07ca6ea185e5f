import json

from epilex.cli import main
from epilex import Alphabet
from epilex.textio import parse_directive, parse_morphism, parse_skew, skew_from_dict


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_generate_golden(capsys):
    code, out, _ = run(capsys, "generate", "--alphabet", "a,b", "--directive", "(ab)", "--prefix", "14")
    assert code == 0
    assert out.strip() == "abaababaabaaba"


def test_min_trivial(capsys):
    code, out, _ = run(capsys, "min", "--alphabet", "a,b", "--directive", "(ab)", "--order", "b<a", "--k", "1")
    assert code == 0
    assert out.strip() == "b"


def test_classify_json(capsys):
    code, out, _ = run(
        capsys, "classify", "--alphabet", "a,b,c", "--directive", "c(ab)", "--depth", "20", "--output", "json"
    )
    assert code == 0
    data = json.loads(out)
    assert data["classification"] == "NotFine"
    assert data["witness"]["order"] == "c<a<b" and data["witness"]["k"] == 2
    assert data["strictness"]["ult"] == ["a", "b"] and data["strictness"]["m"] == 1


def test_classify_skew_json_round_trips(capsys):
    code, out, _ = run(
        capsys,
        "classify", "--alphabet", "a,b,c",
        "--skew", "skew v=(ab) x=c p=4 mu=psi:c suffix=full",
        "--depth", "20", "--output", "json",
    )
    assert code == 0
    data = json.loads(out)
    assert data["classification"] == "SkewEpisturmian"
    alphabet = Alphabet.of("a", "b", "c")
    spec = skew_from_dict(alphabet, data["skew"])
    assert spec == parse_skew(alphabet, "skew v=(ab) x=c p=4 mu=psi:c suffix=9")


def test_construct_and_generate_agree(capsys):
    argv = ["--alphabet", "a,b,c", "--skew", "skew v=(ab) x=c p=0 mu=psi:c suffix=full", "--prefix", "29"]
    code1, out1, _ = run(capsys, "construct", *argv)
    code2, out2, _ = run(capsys, "generate", *argv)
    assert code1 == code2 == 0
    assert out1 == out2
    assert out1.strip() == "ccacbcacacbcacbcacacbcacacbca"


def test_min_all_orders_json(capsys):
    code, out, _ = run(
        capsys,
        "min", "--alphabet", "a,b,c", "--directive", "(abc)",
        "--all-orders", "--k", "3", "--horizon", "500", "--output", "json",
    )
    assert code == 0
    data = json.loads(out)
    assert len(data["results"]) == 6
    orders = {r["order"] for r in data["results"]}
    assert "a<b<c" in orders and "c<b<a" in orders
    for r in data["results"]:
        assert parse_directive(Alphabet.of("a", "b", "c"), data["spec"]["text"])  # echo re-parses
        assert len(r["word"]) == 3


def test_output_is_deterministic(capsys):
    argv = ["classify", "--alphabet", "a,b,c", "--directive", "c(ab)", "--depth", "15", "--output", "json"]
    _, out1, _ = run(capsys, *argv)
    _, out2, _ = run(capsys, *argv)
    assert out1 == out2


def test_parse_error_exits_one(capsys):
    code, _, err = run(capsys, "min", "--alphabet", "a,b", "--directive", "(ab", "--order", "a<b", "--k", "1")
    assert code == 1
    assert "position" in err


def test_validation_error_exits_one(capsys):
    code, _, err = run(
        capsys, "construct", "--alphabet", "a,b,c", "--skew", "skew v=a(b) x=c p=0 suffix=full"
    )
    assert code == 1
    assert "strict" in err


def test_bad_flag_exits_one(capsys):
    code, _, err = run(capsys, "generate", "--alphabet", "a,b")
    assert code == 1


def test_verify_directive(capsys):
    code, out, _ = run(
        capsys, "verify", "--alphabet", "a,b,c", "--directive", "c(ab)", "--i", "3", "--horizon", "300"
    )
    assert code == 0
    assert out.count("ok=True") == 3


def test_verify_skew_round_trip(capsys):
    code, out, _ = run(
        capsys,
        "verify", "--alphabet", "a,b,c",
        "--skew", "skew v=(ab) x=c p=4 mu=psi:c suffix=full",
        "--horizon", "6000", "--output", "json",
    )
    assert code == 0
    data = json.loads(out)
    assert data["checks"][0]["ok"] is True
    assert data["checks"][0]["recovered"]["p"] == 4


def test_env_horizon_override(capsys, monkeypatch):
    monkeypatch.setenv("ETK_HORIZON", "64")
    code, out, _ = run(
        capsys, "min", "--alphabet", "a,b", "--directive", "(ab)", "--order", "a<b", "--k", "2", "--output", "json"
    )
    assert code == 0
    assert json.loads(out)["horizon"] == 64
    monkeypatch.setenv("ETK_HORIZON", "not-a-number")
    code, _, err = run(
        capsys, "min", "--alphabet", "a,b", "--directive", "(ab)", "--order", "a<b", "--k", "2"
    )
    assert code == 1


def test_morphism_text_variants():
    alphabet = Alphabet.of("a", "b", "c")
    assert parse_morphism(alphabet, "psi:abc") == parse_morphism(alphabet, "psi(a)*psi(b)*psi(c)")
    assert parse_morphism(alphabet, "Ψ:abc") == parse_morphism(alphabet, "psi:abc")
    assert parse_morphism(alphabet, "id").is_identity
