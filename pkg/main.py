"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension

python main.py --pipeline verify --config configs/hamiltonian_first.ini --out runs/first
"""

import sys

import cli


def main():
    sys.exit(cli.main())


if __name__ == '__main__':
    main()
