from src.pipelines.cli import main

raise SystemExit(main())
