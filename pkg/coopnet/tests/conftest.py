import pytest
import sys
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))


@pytest.fixture
def channel_params():
    """Path-loss exponent 4 and nu = 0.39, as in the reference setup"""
    from models.schemas import ChannelParams
    return ChannelParams(pathloss_exponent=4.0, nu=0.39)


@pytest.fixture
def relay_topology():
    """Transmitter at the origin, receiver at (0.8, 0), one node inside the reduced range"""
    from simulation.geometry import Topology
    return Topology(positions=((0.0, 0.0), (0.8, 0.0), (0.3, 0.05)), radius=1.0)


@pytest.fixture
def small_config(tmp_path):
    """Scaled-down configuration that runs in well under a second"""
    from models.schemas import SimConfig
    return SimConfig(
        nodes=8,
        slots_per_iteration=40,
        iterations=6,
        topologies=3,
        master_seed=12345,
        out_dir=tmp_path / "out",
    )
