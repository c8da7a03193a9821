import pytest

from offload_bandit.arms import LOCAL
from offload_bandit.arms import JointArm
from offload_bandit.arms import enumerate_arms
from offload_bandit.network import NetworkProfile
from offload_bandit.network import latency_table
from offload_bandit.network import local_latency
from offload_bandit.network import local_size_cap
from offload_bandit.network import offload_latency
from offload_bandit.network import offload_size
from offload_bandit.network import system_cost
from offload_bandit.workload import SlotWorkload


def make_profile(capacity=50.0, server=200.0, link=100.0, d=1.0, tau=1.0):
    """Two identical users sharing one server."""
    return NetworkProfile.from_lists(
        user_capacities=[capacity, capacity],
        server_capacities=[server],
        link_capacity=[[link], [link]],
        cycles_per_bit=d,
        deadline=tau,
    )


class TestNetworkProfile:
    """Test construction of network profiles."""

    def test_counts(self, toy_profile):
        assert toy_profile.num_users == 3
        assert toy_profile.num_servers == 2

    def test_requires_more_users_than_servers(self):
        with pytest.raises(ValueError, match="more users than servers"):
            NetworkProfile.from_lists([10, 20], [100, 100], [[1, 1], [1, 1]])

    def test_rejects_wrong_link_shape(self):
        with pytest.raises(ValueError, match="shape 2x1"):
            NetworkProfile.from_lists([10, 20], [100], [[1, 1], [1, 1]])

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"capacity": 0.0},
            {"server": -1.0},
            {"link": 0.0},
            {"d": 0.0},
            {"tau": -2.0},
        ],
    )
    def test_rejects_non_positive_parameters(self, kwargs):
        with pytest.raises(ValueError, match="must be positive"):
            make_profile(**kwargs)


class TestClosedForms:
    """Test the per-user latency formulas against hand-computed values."""

    @pytest.mark.parametrize(
        "tau, capacity, d, expected",
        [(1.0, 50.0, 1.0, 50.0), (2.0, 50.0, 2.0, 50.0), (1.0, 30.0, 3.0, 10.0)],
    )
    def test_local_size_cap(self, tau, capacity, d, expected):
        profile = make_profile(capacity=capacity, d=d, tau=tau)
        assert local_size_cap(profile, 0) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize("size, expected", [(100.0, 50.0), (50.0, 0.0), (20.0, 0.0)])
    def test_offload_size(self, size, expected):
        profile = make_profile(capacity=50.0)
        assert offload_size(profile, 0, size) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize(
        "d, size, capacity, expected",
        [(1.0, 100.0, 50.0, 2.0), (1.0, 0.0, 50.0, 0.0), (2.0, 60.0, 30.0, 4.0)],
    )
    def test_local_latency(self, d, size, capacity, expected):
        profile = make_profile(capacity=capacity, d=d)
        assert local_latency(profile, 1, size) == pytest.approx(expected, rel=1e-12)

    @pytest.mark.parametrize(
        "profile_kwargs, size, expected",
        [
            ({"capacity": 50.0, "link": 100.0, "server": 200.0}, 150.0, 2.5),
            ({"capacity": 50.0, "link": 50.0, "server": 50.0}, 150.0, 5.0),
            ({"capacity": 25.0, "link": 10.0, "server": 10.0, "tau": 2.0}, 60.0, 4.0),
        ],
    )
    def test_offload_latency(self, profile_kwargs, size, expected):
        profile = make_profile(**profile_kwargs)
        assert offload_latency(profile, 0, 0, size) == pytest.approx(expected, rel=1e-12)

    def test_offload_latency_rejects_tasks_that_fit_locally(self):
        profile = make_profile(capacity=50.0)
        with pytest.raises(ValueError, match="fits locally"):
            offload_latency(profile, 0, 0, 50.0)

    def test_offload_latency_is_at_least_the_deadline(self):
        profile = make_profile(capacity=50.0, tau=3.0, link=1e9, server=1e9)
        assert offload_latency(profile, 0, 0, 151.0) >= 3.0

    def test_latencies_are_monotone_in_size(self):
        profile = make_profile()
        sizes = [51.0, 60.0, 75.5, 100.0, 400.0]
        local = [local_latency(profile, 0, s) for s in sizes]
        remote = [offload_latency(profile, 0, 0, s) for s in sizes]
        assert local == sorted(local)
        assert remote == sorted(remote)


class TestSystemCost:
    """Test the slot cost (maximum latency over users)."""

    def test_max_over_local_users(self):
        profile = make_profile(capacity=50.0)
        workload = SlotWorkload.of([100.0, 150.0])
        assert system_cost(profile, workload, JointArm((LOCAL, LOCAL))) == 3.0

    def test_mixed_actions(self):
        profile = NetworkProfile.from_lists(
            user_capacities=[50, 50, 25],
            server_capacities=[200, 50],
            link_capacity=[[100, 100], [50, 50], [100, 100]],
        )
        workload = SlotWorkload.of([150.0, 150.0, 100.0])
        cost = system_cost(profile, workload, JointArm((0, 1, LOCAL)))
        assert cost == pytest.approx(5.0, rel=1e-12)

    def test_rejects_wrong_arm_dimension(self, toy_profile):
        with pytest.raises(ValueError, match="3 users"):
            system_cost(toy_profile, SlotWorkload.of([1.0, 2.0, 3.0]), JointArm((LOCAL,)))

    def test_rejects_unknown_server(self, toy_profile):
        workload = SlotWorkload.of([20.0, 40.0, 45.0])
        with pytest.raises(ValueError, match=r"server indices \[5\], the network has 2 servers"):
            system_cost(toy_profile, workload, JointArm((0, 5, LOCAL)))

    def test_invariant_to_entries_of_users_that_fit_locally(self, toy_profile):
        # user 0 fits (cap 10), the others offload
        workload = SlotWorkload.of([5.0, 40.0, 45.0])
        costs = {system_cost(toy_profile, workload, JointArm((e, 0, 1))) for e in (-1, 0, 1)}
        assert len(costs) == 1

    def test_at_least_the_best_per_user_latency(self, toy_profile):
        workload = SlotWorkload.of([25.0, 40.0, 45.0])
        table = latency_table(toy_profile, workload)
        bound = table.min(axis=1).max()
        arms = enumerate_arms(3, 2)
        assert all(system_cost(toy_profile, workload, arm) >= bound for arm in arms)


class TestLatencyTable:
    """Test the per-(user, action) latency table."""

    def test_matches_system_cost_for_every_arm(self, toy_profile):
        workload = SlotWorkload.of([8.0, 33.3, 61.7])
        table = latency_table(toy_profile, workload)
        arms = enumerate_arms(3, 2)
        for index, arm in enumerate(arms):
            expected = max(table[user, digit] for user, digit in enumerate(arms.digits[index]))
            assert system_cost(toy_profile, workload, arm) == expected

    def test_fitting_user_repeats_local_latency(self, toy_profile):
        table = latency_table(toy_profile, SlotWorkload.of([5.0, 40.0, 45.0]))
        assert table.shape == (3, 3)
        assert (table[0] == table[0, 0]).all()
        assert table[0, 0] == 0.5
