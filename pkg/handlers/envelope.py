"""
`sim envelope`: static force profiles over roll for several surfaces
"""

import logging
from argparse import Namespace

from harness.plotting import write_envelope
from middleware.guards import handle_errors
from sim.models import MassGeometry
from utils.helpers import parse_degree_list

logger = logging.getLogger(__name__)


@handle_errors
async def envelope_command(args: Namespace) -> int:
    """Handle `sim envelope --betas 10,30,60,80,90 --gt <N>`"""
    betas = [abs(b) for b in parse_degree_list(args.betas)]
    mg = MassGeometry.from_total_weight(args.gt)

    paths = write_envelope(betas, mg, args.out, n_points=args.points)
    for path in paths:
        print(path)
    return 0
