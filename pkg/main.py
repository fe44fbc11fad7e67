from src.data_classes import PQParams
from src.oracles import check_pq_property, gen_planar_instance, verify_stabbing
from src.planar_hd import StabMode, stab_planar


def main():
    # Generate a clustered planar instance
    print("=== Generating a (5, 4) instance ===")
    family = gen_planar_instance(30, 5, 4, seed=7)
    print(f"Generated {len(family)} polygons")
    print(f"(5, 4)-property: {check_pq_property(family, 5, 4).verdict}")

    # Stab it both ways
    for mode in StabMode:
        print(f"\n=== Stabbing ({mode.value}) ===")
        result = stab_planar(family, PQParams(5, 4), mode, seed=1)
        print(f"{len(result.points)} points, budget {result.budget}")
        for point, covered in zip(result.points, result.coverage):
            print(f"  {point}: {len(covered)} polygons")
        print(f"  trail: {result.trail}")
        print(f"  statistics: {result.statistics}")

        certificate = verify_stabbing(family, result.points)
        print(f"Verified: {certificate.verdict}")


if __name__ == "__main__":
    main()
