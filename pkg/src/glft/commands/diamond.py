"""
glft diamond - print the dual deformation parameters of P.

Usage:
    glft diamond --P '{"lambda":2,"A":[[2]],"b":[1],"c":[3],"d":5}'
"""
import argparse
import json
from typing import Optional

from glft.commands.common import load_params
from glft.core.base_command import CliCommand
from glft.deform.params import diamond
from glft.utils.logging import log_success


class DiamondCommand(CliCommand):
    name = "diamond"

    def get_description(self) -> str:
        return "Compute P' with L(F_P) = (L F)_P' and print it as JSON"

    def get_epilog(self) -> Optional[str]:
        return '''
Examples:
  glft diamond --P '{"lambda":2,"A":[[2]],"b":[1],"c":[3],"d":5}'
    {"lambda": 2.0, "A": [[0.25]], "b": [-0.75], "c": [-0.5], "d": -3.5}
  glft diamond --P @params.json --check
        '''

    def setup_arguments(self) -> None:
        self.parser.add_argument(
            '--P',
            dest='params',
            required=True,
            metavar='JSON',
            help='Deformation literal {"lambda","A","b","c","d"}, or @file.json'
        )
        self.parser.add_argument(
            '--check',
            action='store_true',
            help='Also report the relative error of applying the map twice'
        )

    def execute(self, args: argparse.Namespace) -> int:
        P = load_params(args.params)
        dual = diamond(P)
        print(json.dumps(dual.to_dict()))
        if args.check:
            error = diamond(dual).max_relative_error(P)
            log_success(f"diamond(diamond(P)) matches P to {error:.3e}")
        return 0


def main():
    return DiamondCommand().run()


if __name__ == '__main__':
    raise SystemExit(main())
