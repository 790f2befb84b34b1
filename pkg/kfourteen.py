#!/usr/bin/env python3

"""Simple launcher for kfourteen."""

import kfourteen.app
import sys

if __name__ == '__main__':
    sys.exit(kfourteen.app.main())
