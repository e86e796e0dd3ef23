"""Faces of the four-point Lipschitz ball and when they are centrally symmetric."""

from treefree import FaceRegion, brute_symmetry, classify_nine, line_metric, metric_from_points
from treefree.faces import polygon_vertices, quadruple_faces


def corners(R):
    return [f"({x}, {y})" for x, y in polygon_vertices(R)]


# a rectangle: the band constraints never bind
R = FaceRegion(0, 1, 0, 1, -2, 2)
print(classify_nine(R).shape, corners(R))

# a triangle: no condition fires and the polygon agrees
R = FaceRegion(0, 2, 0, 1, 0, 3)
print(classify_nine(R).fired_conditions, corners(R), brute_symmetry(R))

# a hexagon with a centre
R = FaceRegion(0, 2, 0, 2, -1, 1)
print(classify_nine(R).shape, len(polygon_vertices(R)))


def show(M):
    q = quadruple_faces(M, (0, 1, 2, 3))
    for lab in q.labelings:
        rep = lab.report
        cds = [k for k, v in lab.cd.items() if v]
        print(" ", lab.labeling, rep.shape, rep.fired_conditions, cds)
    print("  all faces symmetric:", q.aggregate, "| four-point condition:", q.four_point)


print("collinear points")
show(line_metric([0, 1, 2, 3]))
print("Euclidean square")
show(metric_from_points([(0, 0), (1, 0), (0, 1), (1, 1)], norm="l2"))
