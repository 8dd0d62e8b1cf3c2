from wpkstab.cli import main

raise SystemExit(main())
