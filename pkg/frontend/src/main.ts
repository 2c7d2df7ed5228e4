import { App } from "./app";
import "./styles.css";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");
new App(root).start();
