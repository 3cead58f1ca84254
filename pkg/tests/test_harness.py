import json
from fractions import Fraction

import pytest

from cbp import ParameterError, recognize, validate_packing
from cbp.harness import (
    CSV_COLUMNS,
    GeneratorSpec,
    SizeDist,
    generate,
    generate_b3dm,
    instance_from_dict,
    read_instance,
    run_suite,
    write_instance,
)
from cbp.rng import SplitMix64


def test_rng_reference_stream():
    rng = SplitMix64(0)
    first = rng.next_u64()
    rng2 = SplitMix64(0)
    assert rng2.next_u64() == first
    assert SplitMix64(1).next_u64() != first
    # published splitmix64 test vector for seed 1234567
    rng3 = SplitMix64(1234567)
    assert rng3.next_u64() == 6457827717110365317


def test_generator_determinism_and_classes():
    for klass in ("bipartite", "split", "cluster", "complete-multipartite", "chordal", "edgeless"):
        for seed in (0, 5, 77):
            spec = GeneratorSpec(klass=klass, n=11, density=0.45, seed=seed)
            a = generate(spec)
            b = generate(spec)
            assert a == b
            info = recognize(a)
            flag = {
                "bipartite": info.is_bipartite,
                "split": info.is_split,
                "cluster": info.is_cluster,
                "complete-multipartite": info.is_complete_multipartite,
                "chordal": info.is_chordal,
                "edgeless": info.is_edgeless,
            }[klass]
            assert flag
            assert a.class_hint == klass


def test_size_distributions():
    grid = GeneratorSpec(klass="edgeless", n=50, seed=1)
    inst = generate(grid)
    assert all(s.denominator <= 20 for s in inst.sizes.values())
    uni = GeneratorSpec(
        klass="edgeless", n=50, seed=1, size_dist=SizeDist(kind="uniform", lo=0.2, hi=0.4)
    )
    inst2 = generate(uni)
    assert all(Fraction(1, 5) <= s <= Fraction(2, 5) for s in inst2.sizes.values())
    disc = GeneratorSpec(
        klass="edgeless", n=20, seed=1, size_dist=SizeDist(kind="discrete", values=("1/3", "1/2"))
    )
    inst3 = generate(disc)
    assert set(inst3.sizes.values()) <= {Fraction(1, 3), Fraction(1, 2)}


def test_b3dm_generator():
    spec = GeneratorSpec(
        klass="b3dm-reduction", x_count=4, y_count=4, z_count=4, t_count=6, guess=3, seed=11
    )
    inst, planted = generate_b3dm(spec)
    assert inst.n == 4 * 3 + 6 + (6 - 3) + (12 - 9)
    info = recognize(inst)
    assert info.is_bipartite
    report = validate_packing(inst, planted, require_cover=True)
    assert report.feasible
    assert all(inst.size_of(b) == 1 for b in planted.bins)
    # useful bins: one triple item plus its three elements, size exactly 1
    triples = [b for b in planted.bins if len(b) == 4]
    assert len(triples) == spec.guess

    bps = GeneratorSpec(
        klass="b3dm-reduction", x_count=4, y_count=4, z_count=4, t_count=6, guess=3, seed=11,
        variant="BPS",
    )
    inst2, planted2 = generate_b3dm(bps)
    assert recognize(inst2).is_split
    assert validate_packing(inst2, planted2, require_cover=True).feasible

    with pytest.raises(ParameterError):
        generate_b3dm(GeneratorSpec(klass="b3dm-reduction", x_count=1, y_count=1, z_count=1, t_count=2, guess=3))
    with pytest.raises(ParameterError):
        generate_b3dm(GeneratorSpec(klass="b3dm-reduction", x_count=9, y_count=1, z_count=1, t_count=2, guess=2))


def test_b3dm_degree_cap():
    spec = GeneratorSpec(
        klass="b3dm-reduction", x_count=5, y_count=5, z_count=5, t_count=12, guess=3,
        seed=2, degree_cap=3,
    )
    inst, _ = generate_b3dm(spec)
    # count triples per element via labels
    triple_items = [i for i in inst.items if inst.labels[i].startswith("t")]
    element_items = [i for i in inst.items if inst.labels[i][0] in "xyz"]
    for u in element_items:
        member_of = sum(
            1 for t in triple_items if not inst.has_edge(u, t)
        )
        assert member_of <= spec.degree_cap


def test_instance_io_roundtrip(tmp_path):
    inst = generate(GeneratorSpec(klass="split", n=9, seed=3))
    path = tmp_path / "inst.json"
    write_instance(inst, path)
    back = read_instance(path)
    assert back == inst

    data = {
        "items": [{"id": 10, "size": "1/3"}, {"id": 20, "size": 0.25}],
        "edges": [[10, 20]],
        "class_hint": None,
    }
    remapped = instance_from_dict(data)
    assert remapped.items == (0, 1)
    assert remapped.sizes[0] == Fraction(1, 3)
    assert remapped.sizes[1] == Fraction(1, 4)
    assert remapped.labels == {0: "10", 1: "20"}
    assert remapped.edges == frozenset({(0, 1)})

    with pytest.raises(ParameterError):
        instance_from_dict({"items": [{"id": 0, "size": "0.5"}], "edges": [[0, 3]]})


def _suite_config(**overrides):
    config = {
        "seed": 9,
        "instances": [
            {"class": "bipartite", "n": 8, "density": 0.4, "seed": 4},
        ],
        "algorithms": ["color_sets", "abs_bpb"],
        "oracle": True,
        "oracle_limit": 10,
        "deterministic": True,
    }
    config.update(overrides)
    return config


def test_run_suite_rows_and_files(tmp_path):
    report = run_suite(_suite_config(), tmp_path)
    assert len(report.rows) == 2
    for row in report.rows:
        assert row.bins is not None and row.opt is not None
        assert row.ratio == row.bins / row.opt
    csv_text = (tmp_path / "report.csv").read_text().splitlines()
    assert csv_text[0] == ",".join(CSV_COLUMNS)
    assert len(csv_text) == 3
    assert (tmp_path / "results" / "bipartite-00000.json").exists()
    assert (tmp_path / "summary.csv").exists()
    detail = json.loads((tmp_path / "results" / "bipartite-00000.json").read_text())
    assert detail["results"][0]["feasible"]


def test_run_suite_empty(tmp_path):
    report = run_suite({"instances": [], "algorithms": []}, tmp_path)
    assert report.rows == []
    lines = (tmp_path / "report.csv").read_text().splitlines()
    assert lines == [",".join(CSV_COLUMNS)]


def test_run_suite_skips_unsupported(tmp_path):
    config = _suite_config(algorithms=["split_approx", "multipartite_pack"])
    config["instances"] = [{"class": "bipartite", "n": 6, "density": 0.9, "seed": 1}]
    report = run_suite(config, tmp_path)
    skipped = [r for r in report.rows if r.fallback_flags.startswith("skipped:")]
    assert skipped  # density-0.9 bipartite n=6 is unlikely to be split


def test_run_suite_deterministic_bytes(tmp_path):
    config = _suite_config(sweep={"classes": ["split"], "count": 3, "n_min": 5, "n_max": 9})
    a_dir = tmp_path / "a"
    b_dir = tmp_path / "b"
    run_suite(config, a_dir)
    run_suite(config, b_dir)
    assert (a_dir / "report.csv").read_bytes() == (b_dir / "report.csv").read_bytes()
    assert (a_dir / "summary.csv").read_bytes() == (b_dir / "summary.csv").read_bytes()


def test_run_suite_jobs_match_serial(tmp_path):
    config = _suite_config(sweep={"classes": ["bipartite", "cluster"], "count": 2, "n_min": 5, "n_max": 8})
    serial = tmp_path / "serial"
    parallel = tmp_path / "parallel"
    run_suite(config, serial, jobs=1)
    run_suite(config, parallel, jobs=2)
    assert (serial / "report.csv").read_bytes() == (parallel / "report.csv").read_bytes()


def test_cbp_seed_env_override(tmp_path, monkeypatch):
    config = _suite_config()
    base = run_suite(config, tmp_path / "base")
    monkeypatch.setenv("CBP_SEED", "31337")
    other = run_suite(config, tmp_path / "override")
    monkeypatch.delenv("CBP_SEED")
    assert [r.bins for r in base.rows] != [] and [r.bins for r in other.rows] != []
    base_csv = (tmp_path / "base" / "report.csv").read_text()
    override_csv = (tmp_path / "override" / "report.csv").read_text()
    assert base_csv != override_csv


def test_run_algorithm_unknown_name():
    from cbp.harness import run_algorithm

    inst = generate(GeneratorSpec(klass="edgeless", n=2, seed=1))
    with pytest.raises(ParameterError):
        run_algorithm("bogus", inst, recognize(inst))
