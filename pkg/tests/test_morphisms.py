import pytest

from antisquares.morphisms import (
    UNIFORM_LENGTHS,
    VERIFICATION_PARAMS,
    Morphism,
    RegistryError,
    apply,
    complement_factor_bound,
    fixed_point_prefix,
    image_power_check,
    is_synchronizing,
    load_registry,
    morphic_antisquare_inventory,
    squarefree_ternary_words,
    verify_construction,
)
from antisquares.repetitions import PowerBound
from antisquares.words import Word


@pytest.fixture(scope="module")
def registry():
    return load_registry()


def test_morphism_basics():
    m = Morphism(("01", "11"))
    assert m.domain_alphabet == 2
    assert m.uniform_length == 2
    assert m.apply_text("010") == "011101"
    assert apply(m, Word("01")).text == "0111"
    assert Morphism(("0", "01")).uniform_length is None
    with pytest.raises(ValueError):
        Morphism(("0", ""))


def test_apply_domain_check():
    m = Morphism(("01", "11"))
    with pytest.raises(ValueError):
        apply(m, Word("012", 3))


def test_fixed_point_prefix():
    phi = Morphism(("001", "01"))
    w = fixed_point_prefix(phi, 0, 20)
    assert w.text.startswith("001")
    # the prefix is a genuine fixed-point prefix: applying the morphism
    # reproduces it
    assert phi.apply_text(w.text).startswith(w.text[:20])
    with pytest.raises(ValueError):
        fixed_point_prefix(Morphism(("10", "01")), 0, 5)


def test_fixed_point_prefix_stability():
    phi = Morphism(("001", "01"))
    a = fixed_point_prefix(phi, 0, 50).text
    b = fixed_point_prefix(phi, 0, 500).text
    assert b.startswith(a[:50])


def test_is_synchronizing():
    assert is_synchronizing(Morphism(("001", "011")))
    # 01 occurs at offset 1 inside 10.01, so the doubling morphism fails
    assert not is_synchronizing(Morphism(("01", "10")))
    assert not is_synchronizing(Morphism(("00", "00")))
    with pytest.raises(ValueError):
        is_synchronizing(Morphism(("0", "01")))


def test_squarefree_ternary_counts():
    # classical counts of squarefree ternary words
    expected = {0: 1, 1: 3, 2: 6, 3: 12, 4: 18, 5: 30, 6: 42, 7: 60}
    for n, c in expected.items():
        assert sum(1 for _ in squarefree_ternary_words(n)) == c


def test_squarefree_ternary_words_are_squarefree():
    for w in squarefree_ternary_words(6):
        t = w.text
        for p in range(1, 4):
            for i in range(len(t) - 2 * p + 1):
                assert t[i : i + p] != t[i + p : i + 2 * p]


def test_registry_loads_and_checksums(registry):
    assert set(registry) >= set(VERIFICATION_PARAMS)
    for name in ("phi", "g", "gprime", "fib", "fib2", "mu", "vtm", "h154"):
        assert name in registry
    assert registry["phi"].morphism.images == ("001", "01")
    assert registry["g"].morphism.images == ("01", "11")
    assert registry["gprime"].morphism.images == ("01", "00")
    assert registry["h154"].morphism.images == (
        "010001",
        "0100010001",
        "01000100010001",
    )


def test_registry_uniform_lengths(registry):
    for name, expected in UNIFORM_LENGTHS.items():
        assert registry[name].morphism.uniform_length == expected, name


def test_registry_checksum_tamper_detection(tmp_path, monkeypatch):
    import antisquares.morphisms as mm

    good = (
        "bad:\n0 -> 01\n1 -> 10\n"
        "# source: test\n"
        "# sha256: 0000000000000000000000000000000000000000000000000000000000000000\n"
    )

    class FakeTraversable:
        def joinpath(self, _):
            return self

        def read_text(self):
            return good

    monkeypatch.setattr(mm.resources, "files", lambda _: FakeTraversable())
    with pytest.raises(RegistryError):
        mm.load_registry()


def test_image_power_check_positive(registry):
    m = registry["zeta3"].morphism
    assert image_power_check(m, PowerBound.parse("3+"), 4)


def test_image_power_check_negative():
    # images of a constant morphism are full of squares
    bad = Morphism(("000", "000", "000"))
    assert not image_power_check(bad, PowerBound.parse("2"), 2)


def test_complement_factor_bound_small(registry):
    assert complement_factor_bound(registry["zeta3"].morphism) == 4


def test_complement_factor_bound_caps_antisquare_orders(registry):
    m = registry["xi3"].morphism
    cb = complement_factor_bound(m)
    inv = morphic_antisquare_inventory(m, 2 * cb)
    assert inv.max_order <= cb


def test_verify_construction_fast_entries(registry):
    for name in ("xi3", "zeta3", "zeta6"):
        params = VERIFICATION_PARAMS[name]
        report = verify_construction(name, registry)
        assert report.synchronizing
        assert report.image_bound_ok
        assert report.complement_bound == params["m"]
        if params["kind"] == "order":
            assert report.inventory.max_order < params["cap"]
        else:
            assert report.inventory.count <= params["cap"]
        assert str(params["m"]) in report.render()
