from stableplace.main import main

main()
