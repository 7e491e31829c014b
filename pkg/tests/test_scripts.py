import importlib.util
import json
from pathlib import Path

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def load(name):
    spec = importlib.util.spec_from_file_location(name, SCRIPTS / f"{name}.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def test_m_counts(tmp_path):
    mod = load("m_counts")
    out = tmp_path / "m.json"
    mod.main(["--k-max", "4", "--out", str(out)])
    rows = json.loads(out.read_text())["rows"]
    assert [(r["k"], r["M"], r["flag"]) for r in rows][0] == (3, 1, "EXACT")
    assert all(r["rank"] == r["formula_rank"] for r in rows)


def test_survey(tmp_path):
    mod = load("torus_bundle_survey")
    rows = mod.survey(mod.SurveyConfig(radius=2, n_max=2))
    cat_like = [r for r in rows if r["all_conditions"]]
    assert cat_like and all(r["trace"] > 2 and r["bounds"]["2"] == 1 for r in cat_like)
    minus_id = next(r for r in rows if r["matrix"] == [[-1, 0], [0, -1]])
    assert minus_id["cond2"] == "FAILS_AT(2)"
    assert minus_id["torsion_example"]["kind"] == "ORDER_DIVIDES"
    # the survey covers every determinant-one matrix in the box
    assert len(rows) == sum(1 for a in range(-2, 3) for b in range(-2, 3) for c in range(-2, 3)
                            for d in range(-2, 3) if a * d - b * c == 1)
