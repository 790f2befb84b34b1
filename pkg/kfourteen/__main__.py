"""Entry point for kfourteen. Simply execute the respective app."""

import sys
import kfourteen.app

if __name__ == '__main__':
    sys.exit(kfourteen.app.main())
