import math
from fractions import Fraction

import pytest

from cbp import (
    AssignConfig,
    CapabilityError,
    ConflictInstance,
    ParameterError,
    abs_bpb,
    approx_bpc,
    assign,
    build_assignment_lp,
    classify_items,
    color_sets,
    matching_pack,
    max_solve,
    minimum_coloring,
    multipartite_pack,
    opt_bpc_exact,
    recognize,
    round_assignment,
    solve_assignment_lp,
    split_approx,
    validate_packing,
)
from cbp.model import make_packing
from cbp.packing_classic import asymptotic_bp

from conftest import CLASSES, seeded_instance


def coloring_bound(instance, info):
    chi = len(minimum_coloring(instance, info))
    classes = classify_items(instance)
    return (
        chi
        + len(classes.large)
        + Fraction(3, 2) * instance.size_of(classes.medium)
        + Fraction(4, 3) * instance.size_of(classes.small)
    )


def test_color_sets_examples():
    edgeless = ConflictInstance({0: "0.6", 1: "0.6", 2: "0.3"})
    packing = color_sets(edgeless)
    assert packing.bin_count == asymptotic_bp(edgeless.items, edgeless.sizes).bin_count

    bip = ConflictInstance(
        {0: "0.5", 1: "0.4", 2: "0.5", 3: "0.4"}, edges=[(0, 2), (0, 3), (1, 2)]
    )
    info = recognize(bip)
    x, y = info.bipartition
    assert bip.size_of(x) <= 1 and bip.size_of(y) <= 1
    assert color_sets(bip, info).bin_count == 2

    assert color_sets(ConflictInstance({})).bin_count == 0


def test_color_sets_bound_random():
    for seed in range(40):
        klass = CLASSES[seed % len(CLASSES)]
        inst = seeded_instance(klass, 4 + seed % 12, 7000 + seed)
        info = recognize(inst)
        packing = color_sets(inst, info)
        assert validate_packing(inst, packing, require_cover=True).feasible
        assert Fraction(packing.bin_count) <= coloring_bound(inst, info)


def test_max_solve_examples():
    no_large = ConflictInstance({0: "0.3", 1: "0.4"})
    info = recognize(no_large)
    assert max_solve(no_large, info).bin_count == color_sets(no_large, info).bin_count

    pair = ConflictInstance({0: "0.7", 1: "0.3"})
    assert max_solve(pair).bin_count == 1

    conflicted = ConflictInstance({0: "0.7", 1: "0.3"}, edges=[(0, 1)])
    assert max_solve(conflicted).bin_count == 2


def test_matching_pack_examples():
    mediums = ConflictInstance({0: "0.4", 1: "0.45", 2: "0.1"})
    packing = matching_pack(mediums)
    assert frozenset({0, 1}) in packing.bins

    clash = ConflictInstance({0: "0.4", 1: "0.45"}, edges=[(0, 1)])
    assert matching_pack(clash).bin_count == 2

    smalls = ConflictInstance({0: "0.2", 1: "0.2"})
    info = recognize(smalls)
    assert matching_pack(smalls, info).bin_count == color_sets(smalls, info).bin_count


def test_matching_pack_bound_with_oracle():
    for seed in range(20):
        klass = CLASSES[seed % len(CLASSES)]
        inst = seeded_instance(klass, 6 + seed % 7, 7100 + seed)
        info = recognize(inst)
        packing = matching_pack(inst, info)
        assert validate_packing(inst, packing, require_cover=True).feasible
        _, opt = opt_bpc_exact(inst)
        chi = len(minimum_coloring(inst, info))
        smalls = classify_items(inst).small
        assert Fraction(packing.bin_count) <= opt + chi + Fraction(4, 3) * inst.size_of(smalls)


def test_approx_bpc_examples():
    assert approx_bpc(ConflictInstance({})).bin_count == 0
    for seed in range(12):
        klass = CLASSES[seed % len(CLASSES)]
        inst = seeded_instance(klass, 9, 7200 + seed)
        info = recognize(inst)
        combined = approx_bpc(inst, info)
        parts = [color_sets(inst, info), max_solve(inst, info), matching_pack(inst, info)]
        assert combined.bin_count == min(p.bin_count for p in parts)
        assert any(f.startswith("winner:") for f in combined.flags)
        # deterministic
        assert approx_bpc(inst, info).flags == combined.flags


def test_approx_bpc_bipartite_ceiling():
    for seed in range(15):
        inst = seeded_instance("bipartite", 12, 7300 + seed)
        _, opt = opt_bpc_exact(inst)
        packing = approx_bpc(inst)
        assert packing.bin_count <= math.ceil(Fraction(5, 3) * opt)


def test_split_approx_examples():
    one_bin = ConflictInstance({0: "0.4", 1: "0.3"})
    assert split_approx(one_bin).bin_count == 1

    clique = ConflictInstance({0: "0.5", 1: "0.5"}, edges=[(0, 1)])
    assert split_approx(clique).bin_count == 2

    with pytest.raises(CapabilityError):
        split_approx(
            ConflictInstance({i: "0.1" for i in range(4)}, edges=[(0, 1), (1, 2), (2, 3), (3, 0)])
        )
    assert split_approx(ConflictInstance({})).bin_count == 0


def test_split_approx_ceiling():
    bound = 1 + 2 / math.e
    for seed in range(15):
        inst = seeded_instance("split", 12, 7400 + seed)
        info = recognize(inst)
        packing = split_approx(inst, info)
        assert validate_packing(inst, packing, require_cover=True).feasible
        _, opt = opt_bpc_exact(inst)
        assert packing.bin_count <= math.ceil(bound * opt)


def test_assignment_lp_examples():
    inst = ConflictInstance({0: "0.5", 1: "0.2", 2: "0.2", 3: "0.2"})
    big = make_packing([{0}])
    lp = build_assignment_lp(inst, big, [1, 2, 3])
    sol = solve_assignment_lp(inst, lp)
    assert sol.objective == Fraction(5, 2)

    lp_empty = build_assignment_lp(inst, big, [])
    assert solve_assignment_lp(inst, lp_empty).objective == 0

    conflicted = ConflictInstance({0: "0.5", 1: "0.2"}, edges=[(0, 1)])
    lp_conf = build_assignment_lp(conflicted, make_packing([{0}]), [1])
    assert lp_conf.eligible == (frozenset(),)
    assert not lp_conf.variables

    with pytest.raises(ParameterError):
        build_assignment_lp(inst, big, [0, 1])


def test_round_assignment_examples():
    inst = ConflictInstance({0: "0.5", 1: "0.2", 2: "0.2", 3: "0.2"})
    big = make_packing([{0}])
    rounded = round_assignment(inst, big, [1, 2, 3])
    assert rounded.bin_count == 1
    assert len(rounded.items() - {0}) >= 2  # >= LP opt (2.5) - t (1)
    assert "lemma12:ok" in rounded.flags

    fits = ConflictInstance({0: "0.5", 1: "0.2", 2: "0.2"})
    rounded2 = round_assignment(fits, make_packing([{0}]), [1, 2])
    assert rounded2.items() == {0, 1, 2}  # integral LP packs all of W

    empty = round_assignment(fits, make_packing([]), [1, 2])
    assert empty.bin_count == 0


def test_round_assignment_structure_random():
    from cbp.rng import SplitMix64

    rng = SplitMix64(42)
    for seed in range(25):
        inst = seeded_instance("bipartite", 10, 7500 + seed, density=0.5)
        info = recognize(inst)
        x, y = info.bipartition
        side = sorted(x) if seed % 2 == 0 else sorted(y)
        w = side[: min(4, len(side))]
        big_items = [i for i in inst.items if i not in w]
        big = color_sets(
            ConflictInstance(
                {i: inst.sizes[i] for i in big_items},
                [(u, v) for u, v in inst.edges if u in big_items and v in big_items],
            )
        )
        lp = build_assignment_lp(inst, big, w)
        sol = solve_assignment_lp(inst, lp)
        assert len(sol.fractional_items) <= lp.bin_count
        rounded = round_assignment(inst, big, w)
        assert rounded.bin_count == big.bin_count
        kept = len(rounded.items() - big.items())
        assert Fraction(kept) >= sol.objective - lp.bin_count
        assert validate_packing(inst, rounded).feasible


def _tiny_testbed():
    # two conflicting 0.5 items (forced apart) plus tiny items on one side
    sizes = {0: "0.5", 1: "0.5", 2: "0.05", 3: "0.05", 4: "0.05", 5: "0.05"}
    edges = [(0, 1)]
    return ConflictInstance(sizes, edges)


def test_assign_examples():
    inst = _tiny_testbed()
    info = recognize(inst)
    config = AssignConfig(eps=Fraction(1, 12), max_bins=4, max_big_items=6)
    tiny = classify_items(inst, eps=config.eps).tiny
    packing = assign(inst, sorted(tiny), info, config)
    assert validate_packing(inst, packing, require_cover=True).feasible
    _, opt = opt_bpc_exact(inst)
    assert packing.bin_count <= opt + 1

    # enumeration cap fallback
    capped = AssignConfig(eps=Fraction(1, 12), max_big_items=1)
    fallback = assign(inst, sorted(tiny), info, capped)
    assert "enumeration-skipped" in fallback.flags
    assert fallback.bin_count == color_sets(inst, info).bin_count

    # no big items at all
    all_tiny = ConflictInstance({0: "0.01", 1: "0.01"})
    t_info = recognize(all_tiny)
    t_cfg = AssignConfig(eps=Fraction(1, 50))
    packing2 = assign(all_tiny, [0, 1], t_info, t_cfg)
    assert packing2.bin_count <= color_sets(all_tiny, t_info).bin_count


def test_assign_rejects_non_tiny_w():
    inst = _tiny_testbed()
    with pytest.raises(ParameterError):
        assign(inst, [0], recognize(inst), AssignConfig(eps=Fraction(1, 12)))


def test_abs_bpb_examples():
    assert abs_bpb(ConflictInstance({})).bin_count == 0

    one = ConflictInstance({0: "0.4", 1: "0.3"})
    assert abs_bpb(one).bin_count == 1

    with pytest.raises(CapabilityError):
        abs_bpb(ConflictInstance({0: "0.1", 1: "0.1", 2: "0.1"}, edges=[(0, 1), (1, 2), (0, 2)]))

    for seed in range(12):
        inst = seeded_instance("bipartite", 10 + seed % 5, 7600 + seed)
        packing = abs_bpb(inst)
        assert validate_packing(inst, packing, require_cover=True).feasible
        _, opt = opt_bpc_exact(inst)
        assert packing.bin_count <= math.ceil(Fraction(5, 3) * opt)


def test_abs_bpb_large_instance_uses_bounded_search():
    # 18 items, optimum 2: the n > 16 path must still find a small packing.
    sizes = {i: "0.1" for i in range(18)}
    inst = ConflictInstance(sizes)
    packing = abs_bpb(inst)
    assert packing.bin_count == 2
    assert validate_packing(inst, packing, require_cover=True).feasible


def test_multipartite_examples():
    two_parts = ConflictInstance(
        {0: "0.6", 1: "0.6", 2: "0.6", 3: "0.6"},
        edges=[(0, 2), (0, 3), (1, 2), (1, 3)],
    )
    packing = multipartite_pack(two_parts)
    assert packing.bin_count == 4
    _, opt = opt_bpc_exact(two_parts)
    assert packing.bin_count == opt

    one_part = ConflictInstance({0: "0.6", 1: "0.3"})
    assert multipartite_pack(one_part).bin_count == asymptotic_bp([0, 1], one_part.sizes).bin_count

    assert multipartite_pack(ConflictInstance({})).bin_count == 0

    with pytest.raises(CapabilityError):
        multipartite_pack(ConflictInstance({0: "0.1", 1: "0.1", 2: "0.1"}, edges=[(0, 1)]))


def test_multipartite_decomposition():
    for seed in range(15):
        inst = seeded_instance("complete-multipartite", 6 + seed % 9, 7700 + seed)
        info = recognize(inst)
        packing = multipartite_pack(inst, info)
        assert validate_packing(inst, packing, require_cover=True).feasible
        _, opt = opt_bpc_exact(inst)
        per_part = 0
        for part in info.parts:
            sub = ConflictInstance({i: inst.sizes[i] for i in part})
            per_part += opt_bpc_exact(sub)[1]
        assert per_part == opt
        assert packing.bin_count <= math.ceil(1.5 * opt)
