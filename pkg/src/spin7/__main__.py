from spin7.cli import main

raise SystemExit(main())
