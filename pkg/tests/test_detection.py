import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from autodirector import (
    EVENT_KINDS,
    EVENT_PRIORITY,
    DiscreteEvent,
    MapPos,
    PositionTarget,
    UnitTarget,
    default_config,
    detect_clusters,
    detect_events,
    is_army_unit,
    is_scouting_worker,
    near_potential_enemy_base,
)
from autodirector.model import apply_config_overrides
from helpers import make_frame, make_map, make_unit

CFG = default_config()
MAP = make_map()  # starts: player 0 at (128,128), player 1 at (1920,1920)


class TestArmyClassification:
    @pytest.mark.parametrize("flag", ["worker", "structure", "larva", "overlord", "spider_mine"])
    def test_excluded_kinds(self, flag):
        assert not is_army_unit(make_unit(1, 0, 0, flags={flag}))

    def test_generic_combat_unit(self):
        assert is_army_unit(make_unit(1, 0, 0))

    def test_transport_counts_as_army(self):
        assert is_army_unit(make_unit(1, 0, 0, flags={"transport"}))

    def test_flagged_transport_follows_other_flag(self):
        assert not is_army_unit(make_unit(1, 0, 0, flags={"worker", "transport"}))


class TestScoutingWorker:
    def test_worker_at_home_is_not_scouting(self):
        u = make_unit(1, 128, 128, flags={"worker"})
        assert not is_scouting_worker(u, 100, MAP, CFG)

    def test_late_game_worker_is_not_scouting(self):
        u = make_unit(1, 1128, 128, flags={"worker"})
        assert not is_scouting_worker(u, 8000, MAP, CFG)

    def test_cutoff_is_strict(self):
        u = make_unit(1, 1128, 128, flags={"worker"})
        assert is_scouting_worker(u, 7499, MAP, CFG)
        assert not is_scouting_worker(u, 7500, MAP, CFG)

    def test_base_radius_is_strict(self):
        # 320 px from own start exactly: still "in its own base".
        u_on = make_unit(1, 128 + 320, 128, flags={"worker"})
        u_out = make_unit(1, 128 + 320.5, 128, flags={"worker"})
        assert not is_scouting_worker(u_on, 100, MAP, CFG)
        assert is_scouting_worker(u_out, 100, MAP, CFG)

    def test_owner_without_start_is_always_away_from_home(self):
        lopsided = make_map(starts=((0, (128.0, 128.0)), (None, (1920.0, 1920.0))))
        u = make_unit(1, 500, 500, owner=1, flags={"worker"})
        assert is_scouting_worker(u, 100, lopsided, CFG)


class TestNearPotentialEnemyBase:
    def test_at_opponent_start(self):
        assert near_potential_enemy_base(MapPos(1920, 1920), 0, MAP, CFG)

    def test_own_start_is_excluded(self):
        assert not near_potential_enemy_base(MapPos(128, 128), 0, MAP, CFG)

    def test_boundary_is_inclusive(self):
        # hypot(256, 192) == 320.0 exactly in floating point.
        pos = MapPos(1920 - 256, 1920 - 192)
        assert pos.distance_to(MapPos(1920, 1920)) == 320.0
        assert near_potential_enemy_base(pos, 0, MAP, CFG)
        assert not near_potential_enemy_base(MapPos(1920 - 321, 1920), 0, MAP, CFG)

    def test_unowned_start_counts_for_everyone(self):
        three = make_map(starts=((0, (128.0, 128.0)), (1, (1920.0, 1920.0)), (None, (1024.0, 128.0))))
        assert near_potential_enemy_base(MapPos(1024, 128), 0, three, CFG)
        assert near_potential_enemy_base(MapPos(1024, 128), 1, three, CFG)


def brute_force_clusters(units, config):
    """Independent single-linkage oracle: explicit graph plus BFS components."""
    army = [u for u in units if is_army_unit(u)]
    adj = {u.unit_id: [] for u in army}
    for i, a in enumerate(army):
        for b in army[i + 1 :]:
            if a.pos.distance_to(b.pos) <= config.cluster_radius_px:
                adj[a.unit_id].append(b.unit_id)
                adj[b.unit_id].append(a.unit_id)
    by_id = {u.unit_id: u for u in army}
    seen = set()
    groups = []
    for u in army:
        if u.unit_id in seen:
            continue
        queue, component = [u.unit_id], []
        seen.add(u.unit_id)
        while queue:
            uid = queue.pop()
            component.append(by_id[uid])
            for other in adj[uid]:
                if other not in seen:
                    seen.add(other)
                    queue.append(other)
        groups.append(component)
    clusters = []
    for g in groups:
        if len(g) >= config.cluster_min_units:
            g = sorted(g, key=lambda m: m.unit_id)
            cx = sum(m.pos.x for m in g) / len(g)
            cy = sum(m.pos.y for m in g) / len(g)
            clusters.append((MapPos(cx, cy), len(g)))
    clusters.sort(key=lambda c: (-c[1], c[0].x, c[0].y))
    return clusters


class TestClustering:
    def test_colocated_cluster(self):
        units = [make_unit(i, 600, 700) for i in range(1, 7)]
        clusters = detect_clusters(units, CFG)
        assert len(clusters) == 1
        assert clusters[0].centroid == MapPos(600, 700)
        assert clusters[0].member_count == 6

    def test_below_threshold(self):
        units = [make_unit(i, 600, 700) for i in range(1, 6)]
        assert detect_clusters(units, CFG) == []

    def test_two_separated_groups(self):
        units = [make_unit(i, 400, 400) for i in range(1, 7)]
        units += [make_unit(i, 1600, 1600) for i in range(10, 16)]
        clusters = detect_clusters(units, CFG)
        assert [(c.centroid, c.member_count) for c in clusters] == [
            (MapPos(400, 400), 6),
            (MapPos(1600, 1600), 6),
        ]

    def test_chain_links_into_one_cluster(self):
        # Consecutive gaps of 120 <= 128; ends are 600 apart, linked transitively.
        units = [make_unit(i + 1, 400 + 120 * i, 500) for i in range(6)]
        clusters = detect_clusters(units, CFG)
        assert len(clusters) == 1 and clusters[0].member_count == 6

    def test_non_army_units_do_not_link_or_count(self):
        units = [make_unit(i, 600, 700) for i in range(1, 6)]
        units.append(make_unit(99, 600, 700, flags={"worker"}))
        assert detect_clusters(units, CFG) == []

    def test_sorted_by_size_then_centroid(self):
        units = [make_unit(i, 1500, 200) for i in range(1, 8)]  # 7 members
        units += [make_unit(i, 300, 900) for i in range(20, 26)]  # 6 members
        units += [make_unit(i, 300, 100) for i in range(40, 46)]  # 6 members, smaller y
        clusters = detect_clusters(units, CFG)
        assert [(c.centroid, c.member_count) for c in clusters] == [
            (MapPos(1500, 200), 7),
            (MapPos(300, 100), 6),
            (MapPos(300, 900), 6),
        ]

    def test_against_brute_force_oracle(self):
        rng = random.Random(1234)
        config = apply_config_overrides(CFG, {"cluster_min_units": 3})
        for _ in range(300):
            units = [
                make_unit(
                    uid,
                    rng.uniform(0, 800),
                    rng.uniform(0, 800),
                    flags=rng.choice((frozenset(), frozenset(), frozenset({"worker"}))),
                )
                for uid in rng.sample(range(1, 40), rng.randrange(0, 20))
            ]
            got = [(c.centroid, c.member_count) for c in detect_clusters(units, config)]
            assert got == brute_force_clusters(units, config)


@st.composite
def unit_strategy(draw):
    flags = draw(
        st.sampled_from(
            [frozenset(), frozenset({"worker"}), frozenset({"overlord"}), frozenset({"transport"}), frozenset({"spider_mine"})]
        )
    )
    return make_unit(
        uid=draw(st.integers(1, 10_000)),
        x=draw(st.floats(0, 2048)),
        y=draw(st.floats(0, 2048)),
        owner=draw(st.sampled_from([0, 1])),
        flags=flags,
        cargo=draw(st.integers(0, 3)) if "transport" in flags else 0,
        attacking=draw(st.booleans()),
        under_attack=draw(st.booleans()),
    )


def frame_strategy(frame=st.integers(0, 10_000)):
    def build(frame_no, units):
        unique, seen = [], set()
        for u in units:
            if u.unit_id not in seen:
                seen.add(u.unit_id)
                unique.append(u)
        return make_frame(frame_no, unique)

    return st.builds(build, frame, st.lists(unit_strategy(), max_size=12))


class TestDetectEvents:
    def test_empty_frame(self):
        assert detect_events(make_frame(0), MAP, CFG) == []

    def test_under_attack_candidate(self):
        f = make_frame(0, [make_unit(5, 900, 900, under_attack=True)])
        (c,) = detect_events(f, MAP, CFG)
        assert (c.kind, c.priority, c.target) == ("under_attack", 3, UnitTarget(5))

    def test_attacking_candidate(self):
        f = make_frame(0, [make_unit(5, 900, 900, attacking=True)])
        (c,) = detect_events(f, MAP, CFG)
        assert (c.kind, c.priority) == ("attacking", 3)

    def test_drop_candidate_at_enemy_start(self):
        f = make_frame(0, [make_unit(5, 1920, 1920, flags={"transport"}, cargo=2)])
        (c,) = detect_events(f, MAP, CFG)
        assert (c.kind, c.priority, c.target) == ("drop", 2, UnitTarget(5))

    def test_empty_transport_is_no_drop(self):
        f = make_frame(0, [make_unit(5, 1920, 1920, flags={"transport"}, cargo=0)])
        assert detect_events(f, MAP, CFG) == []

    def test_loaded_transport_far_away_is_no_drop(self):
        f = make_frame(0, [make_unit(5, 1024, 300, flags={"transport"}, cargo=2)])
        assert detect_events(f, MAP, CFG) == []

    def test_scout_kinds_split_on_enemy_proximity(self):
        far = make_frame(10, [make_unit(5, 1024, 300, flags={"worker"})])
        (c,) = detect_events(far, MAP, CFG)
        assert (c.kind, c.priority) == ("scout_far", 0)
        near = make_frame(10, [make_unit(5, 1900, 1900, flags={"worker"})])
        (c,) = detect_events(near, MAP, CFG)
        assert (c.kind, c.priority) == ("scout_near_enemy", 2)

    def test_each_qualifying_worker_emits(self):
        f = make_frame(10, [make_unit(5, 1024, 300, flags={"worker"}), make_unit(6, 1044, 300, flags={"worker"})])
        assert [c.target for c in detect_events(f, MAP, CFG)] == [UnitTarget(5), UnitTarget(6)]

    def test_unit_created_candidate(self):
        ev = DiscreteEvent(kind="unit_created", unit_id=5, owner=0, pos=MapPos(900, 900))
        f = make_frame(0, [make_unit(5, 900, 900)], [ev])
        (c,) = detect_events(f, MAP, CFG)
        assert (c.kind, c.priority, c.target) == ("unit_created", 1, UnitTarget(5))

    def test_unit_destroyed_emits_nothing(self):
        ev = DiscreteEvent(kind="unit_destroyed", unit_id=99, owner=0, pos=MapPos(900, 900))
        f = make_frame(0, [], [ev])
        assert detect_events(f, MAP, CFG) == []

    def test_canonical_category_order(self):
        ev = DiscreteEvent(kind="unit_created", unit_id=70, owner=0, pos=MapPos(900, 900))
        units = [
            make_unit(70, 900, 900),
            make_unit(60, 1024, 300, flags={"worker"}),  # scout_far
            make_unit(50, 1920, 1920, flags={"transport"}, cargo=1),  # drop
            make_unit(40, 600, 600, attacking=True),
            make_unit(30, 600, 600, under_attack=True),
        ]
        units += [make_unit(i, 1500, 500) for i in range(1, 7)]  # army cluster
        got = [c.kind for c in detect_events(make_frame(10, units, [ev]), MAP, CFG)]
        assert got == ["under_attack", "attacking", "drop", "scout_far", "army_cluster", "unit_created"]

    def test_cluster_precedes_unit_created(self):
        # Both priority 1; category order decides.
        ev = DiscreteEvent(kind="unit_created", unit_id=1, owner=0, pos=MapPos(900, 900))
        units = [make_unit(i, 900, 900) for i in range(1, 9)]
        got = detect_events(make_frame(0, units, [ev]), MAP, CFG)
        assert [c.kind for c in got] == ["army_cluster", "unit_created"]
        assert isinstance(got[0].target, PositionTarget)

    def test_ascending_unit_id_within_category(self):
        units = [make_unit(9, 700, 700, under_attack=True), make_unit(2, 900, 900, under_attack=True)]
        got = detect_events(make_frame(0, units), MAP, CFG)
        assert [c.target.unit_id for c in got] == [2, 9]

    def test_one_unit_can_emit_several_kinds(self):
        u = make_unit(5, 900, 900, attacking=True, under_attack=True)
        got = detect_events(make_frame(0, [u]), MAP, CFG)
        assert [c.kind for c in got] == ["under_attack", "attacking"]

    @given(frame=frame_strategy())
    def test_priority_totality(self, frame):
        for c in detect_events(frame, MAP, CFG):
            assert c.priority == EVENT_PRIORITY[c.kind]
            assert c.frame == frame.frame
            assert c.kind in EVENT_KINDS

    @given(frame=frame_strategy(frame=st.integers(7500, 20_000)))
    def test_no_scouts_at_or_after_cutoff(self, frame):
        for c in detect_events(frame, MAP, CFG):
            assert c.kind not in ("scout_far", "scout_near_enemy")

    @given(frame=frame_strategy())
    @settings(max_examples=60)
    def test_cluster_members_are_army_only(self, frame):
        config = apply_config_overrides(CFG, {"cluster_min_units": 2})
        army_count = sum(1 for u in frame.units if is_army_unit(u))
        for c in detect_clusters(frame.units, config):
            assert c.member_count <= army_count
        assert [(c.centroid, c.member_count) for c in detect_clusters(frame.units, config)] == brute_force_clusters(
            frame.units, config
        )

    @given(frame=frame_strategy())
    @settings(max_examples=40)
    def test_detection_is_deterministic(self, frame):
        assert detect_events(frame, MAP, CFG) == detect_events(frame, MAP, CFG)
