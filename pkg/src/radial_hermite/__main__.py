from radial_hermite.cli import main

if __name__ == "__main__":
    main()
