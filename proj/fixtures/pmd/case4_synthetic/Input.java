public class Input {
}
