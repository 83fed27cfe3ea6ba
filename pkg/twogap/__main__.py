from twogap.cli import main

raise SystemExit(main())
